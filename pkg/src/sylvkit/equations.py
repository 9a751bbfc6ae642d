"""Linear matrix equations as data.

Each equation class knows how to apply its left-hand side to a candidate
``X``, how to measure the substitution residual, and how to write itself as
an ``nm x nm`` Kronecker system acting on ``vec(X)`` (column stacking). The
Kronecker form is the independent oracle every analytic solver is checked
against.
"""
from dataclasses import dataclass

import numpy as np

from .core import as_matrix, fro
from .errors import DimensionMismatch

__all__ = ["Sylvester", "Pencil", "Stein", "Monkeypox", "EQUATION_KINDS"]


def _check(cond, message):
    if not cond:
        raise DimensionMismatch(message)


class _Equation:
    kind = None
    _fields = ()

    def __post_init__(self):
        for name in self._fields:
            object.__setattr__(self, name, as_matrix(getattr(self, name), name))
        self._validate()

    def _validate(self):
        raise NotImplementedError

    @property
    def rhs(self):
        raise NotImplementedError

    def apply(self, X):
        raise NotImplementedError

    def kron_operator(self):
        raise NotImplementedError

    def residual(self, X):
        """Frobenius norm of ``LHS(X) - RHS``, always recomputed from ``X``."""
        return fro(self.apply(X) - self.rhs)

    def scale(self, X):
        raise NotImplementedError

    @property
    def shape(self):
        return self.rhs.shape

    def coefficients(self):
        return {name: getattr(self, name) for name in self._fields}


@dataclass(frozen=True, eq=False)
class Sylvester(_Equation):
    """``A X - X B = C`` with ``A`` n x n, ``B`` m x m, ``C`` n x m."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    kind = "sylvester"
    _fields = ("A", "B", "C")

    def _validate(self):
        n, m = self.C.shape
        _check(self.A.shape == (n, n), f"A must be {n}x{n}, got {self.A.shape}")
        _check(self.B.shape == (m, m), f"B must be {m}x{m}, got {self.B.shape}")

    @property
    def rhs(self):
        return self.C

    def apply(self, X):
        return self.A @ X - X @ self.B

    def kron_operator(self):
        n, m = self.shape
        return np.kron(np.eye(m), self.A) - np.kron(self.B.T, np.eye(n))

    def scale(self, X):
        return (fro(self.A) + fro(self.B)) * fro(X) + fro(self.C)


@dataclass(frozen=True, eq=False)
class Pencil(_Equation):
    """``A X B - C X D = E`` with ``A, C`` n x n, ``B, D`` m x m, ``E`` n x m."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray
    E: np.ndarray

    kind = "pencil"
    _fields = ("A", "B", "C", "D", "E")

    def _validate(self):
        n, m = self.E.shape
        for name in ("A", "C"):
            shape = getattr(self, name).shape
            _check(shape == (n, n), f"{name} must be {n}x{n}, got {shape}")
        for name in ("B", "D"):
            shape = getattr(self, name).shape
            _check(shape == (m, m), f"{name} must be {m}x{m}, got {shape}")

    @property
    def rhs(self):
        return self.E

    def apply(self, X):
        return self.A @ X @ self.B - self.C @ X @ self.D

    def kron_operator(self):
        return np.kron(self.B.T, self.A) - np.kron(self.D.T, self.C)

    def scale(self, X):
        return ((fro(self.A) * fro(self.B) + fro(self.C) * fro(self.D)) * fro(X)
                + fro(self.E))


@dataclass(frozen=True, eq=False)
class Stein(_Equation):
    """``T1 X T2 - X = Y`` with ``T1`` n x n, ``T2`` m x m, ``Y`` n x m."""

    T1: np.ndarray
    T2: np.ndarray
    Y: np.ndarray

    kind = "stein"
    _fields = ("T1", "T2", "Y")

    def _validate(self):
        n, m = self.Y.shape
        _check(self.T1.shape == (n, n), f"T1 must be {n}x{n}, got {self.T1.shape}")
        _check(self.T2.shape == (m, m), f"T2 must be {m}x{m}, got {self.T2.shape}")

    @property
    def rhs(self):
        return self.Y

    def apply(self, X):
        return self.T1 @ X @ self.T2 - X

    def kron_operator(self):
        n, m = self.shape
        return np.kron(self.T2.T, self.T1) - np.eye(n * m)

    def scale(self, X):
        return (fro(self.T1) * fro(self.T2) + 1.0) * fro(X) + fro(self.Y)

    def as_pencil(self):
        """The same equation as ``A X B - C X D = E`` with ``C = D = I``."""
        n, m = self.shape
        return Pencil(self.T1, self.T2, np.eye(n), np.eye(m), self.Y)


@dataclass(frozen=True, eq=False)
class Monkeypox(_Equation):
    """``A* X A + t A X A = Y`` with ``t > 0`` and ``A, Y`` n x n."""

    A: np.ndarray
    t: float
    Y: np.ndarray

    kind = "monkeypox"
    _fields = ("A", "Y")

    def _validate(self):
        n = self.A.shape[0]
        _check(self.A.shape == (n, n), f"A must be square, got {self.A.shape}")
        _check(self.Y.shape == (n, n), f"Y must be {n}x{n}, got {self.Y.shape}")
        t = float(self.t)
        if not (np.isfinite(t) and t > 0):
            raise ValueError(f"t must be a positive real number, got {self.t!r}")
        object.__setattr__(self, "t", t)

    @property
    def rhs(self):
        return self.Y

    @property
    def left_factor(self):
        """``A* + t A``: the equation factors as ``(A* + t A) X A = Y``."""
        return self.A.conj().T + self.t * self.A

    def apply(self, X):
        A = self.A
        return A.conj().T @ X @ A + self.t * (A @ X @ A)

    def kron_operator(self):
        return np.kron(self.A.T, self.left_factor)

    def scale(self, X):
        return (1.0 + self.t) * fro(self.A) ** 2 * fro(X) + fro(self.Y)

    def coefficients(self):
        return {"A": self.A, "t": self.t, "Y": self.Y}


EQUATION_KINDS = {cls.kind: cls for cls in (Sylvester, Pencil, Stein, Monkeypox)}
