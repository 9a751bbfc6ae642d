"""Approximation by commutators ``A X - X C``.

The Frobenius (Schatten-2) problem is linear least squares on ``vec(X)`` and
comes with an optimality certificate. Operator-norm quantities are only
evaluated or bounded from above by seeded random search.
"""
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT
from .core import as_matrix, derivation, fro, operator_norm, unvec, vec
from .errors import DimensionMismatch, HypothesisViolated
from .sampling import complex_gaussian

__all__ = [
    "ApproxResult",
    "best_commutator_approx_frobenius",
    "williams_margin",
    "anderson_margin",
    "DistanceEstimate",
    "distance_to_identity_estimate",
]


@dataclass(eq=False)
class ApproxResult:
    """Best Frobenius approximation of ``B`` by ``A X - X C``.

    ``stationarity`` is ``||A* Rz - Rz C*||_F`` for the residual matrix
    ``Rz``; it vanishes at a least-squares optimum.
    """

    X_opt: np.ndarray
    residual: float
    norm: float
    lower_bound_rhs: float
    stationarity: float

    def to_dict(self):
        return {
            "X_opt": [[[float(z.real), float(z.imag)] for z in row] for row in self.X_opt],
            "residual": self.residual,
            "norm": self.norm,
            "lower_bound_rhs": self.lower_bound_rhs,
            "stationarity": self.stationarity,
            "zero_is_best": self.residual >= self.lower_bound_rhs * (1 - 1e-9),
        }


def best_commutator_approx_frobenius(A, C, B, config=DEFAULT):
    """Minimize ``||B - (A X - X C)||_F`` over ``X``, minimum-norm minimizer."""
    A = as_matrix(A, "A", square=True)
    C = as_matrix(C, "C", square=True)
    B = as_matrix(B, "B")
    n, m = A.shape[0], C.shape[0]
    if B.shape != (n, m):
        raise DimensionMismatch(f"B must be {n}x{m}, got {B.shape}")
    M = np.kron(np.eye(m), A) - np.kron(C.T, np.eye(n))
    x = np.linalg.lstsq(M, vec(B), rcond=config.null_tol)[0]
    X = unvec(x, n, m)
    Rz = B - derivation(A, X, C)
    stationarity = fro(A.conj().T @ Rz - Rz @ C.conj().T)
    return ApproxResult(X, fro(Rz), 2.0, fro(B), stationarity)


def williams_margin(A, X, B=None):
    """``||I - (A X - X B)|| - 1`` in operator norm (``B = A`` by default).

    Non-negative for every ``X`` when ``A`` is normal and ``B = A``.
    """
    A = as_matrix(A, "A", square=True)
    X = as_matrix(X, "X", square=True)
    B = A if B is None else as_matrix(B, "B", square=True)
    if X.shape != A.shape or B.shape != A.shape:
        raise DimensionMismatch("A, X and B must all have the same square shape")
    return operator_norm(np.eye(A.shape[0]) - derivation(A, X, B)) - 1.0


def anderson_margin(A, B, X, config=DEFAULT):
    """``||B - (A X - X A)|| - ||B||`` for normal ``A`` commuting with ``B``."""
    A = as_matrix(A, "A", square=True)
    B = as_matrix(B, "B", square=True)
    X = as_matrix(X, "X", square=True)
    if not A.shape == B.shape == X.shape:
        raise DimensionMismatch("A, B and X must all have the same square shape")
    Ah = A.conj().T
    if fro(Ah @ A - A @ Ah) > config.psd_tol * fro(A) ** 2:
        raise HypothesisViolated("A is not normal within psd_tol")
    if fro(A @ B - B @ A) > config.psd_tol * fro(A) * fro(B):
        raise HypothesisViolated("A and B do not commute within psd_tol")
    return operator_norm(B - derivation(A, X)) - operator_norm(B)


@dataclass(eq=False)
class DistanceEstimate:
    """Distance from ``I`` to the commutators ``A X - X A``.

    ``frobenius_exact`` is the exact minimum in Frobenius norm;
    ``operator_upper`` is the best operator-norm value found by search and is
    only an upper bound on the operator-norm distance.
    """

    frobenius_exact: float
    operator_upper: float
    X_frobenius: np.ndarray
    X_best: np.ndarray
    frobenius_lower_on_best: float
    evaluated: int
    accepted: int


def distance_to_identity_estimate(A, budget=1000, rng=None, step=None):
    """Exact Frobenius distance plus a perturbative operator-norm search.

    The search starts from the Frobenius minimizer and proposes Gaussian
    perturbations, keeping strict improvements (so ties go to the earlier
    candidate); the step halves after every 100 rejections.
    """
    A = as_matrix(A, "A", square=True)
    n = A.shape[0]
    rng = np.random.default_rng(0) if rng is None else rng
    I = np.eye(n)
    M = np.kron(I, A) - np.kron(A.T, I)
    X_f = unvec(np.linalg.lstsq(M, vec(I), rcond=DEFAULT.null_tol)[0], n, n)
    frob = fro(I - derivation(A, X_f))

    best_X = X_f
    best = operator_norm(I - derivation(A, X_f))
    step = 1.0 / max(1.0, operator_norm(A)) if step is None else step
    rejections = accepted = 0
    for _ in range(budget):
        cand = best_X + step * complex_gaussian(rng, (n, n))
        val = operator_norm(I - derivation(A, cand))
        if val < best:
            best, best_X = val, cand
            accepted += 1
        else:
            rejections += 1
            if rejections % 100 == 0:
                step *= 0.5
    lower = fro(I - derivation(A, best_X)) / np.sqrt(n)
    return DistanceEstimate(frob, best, X_f, best_X, lower, budget, accepted)
