"""Dense complex linear algebra shared by every solver.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``;
:func:`as_matrix` is the single validation point (2-D, finite entries).
LAPACK does the heavy lifting: eigenvalues come from ``zgeev`` (Hessenberg
reduction followed by shifted QR) and the matrix exponential from scipy's
scaling-and-squaring Pade routine. Singular values are square roots of the
eigenvalues of the Gram matrix, clamped at zero.
"""
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.optimize import linear_sum_assignment

from .config import DEFAULT
from .errors import (
    DimensionMismatch,
    InvalidIndex,
    NoConvergence,
    NonFiniteEntries,
    NotHermitianPSD,
    SingularMatrix,
    SingularPencil,
)

__all__ = [
    "Spectrum",
    "as_matrix",
    "adjoint",
    "fro",
    "solve_linear",
    "eigenvalues",
    "pencil_eigenvalues",
    "matrix_exp",
    "kron",
    "vec",
    "unvec",
    "singular_values",
    "schatten_norm",
    "operator_norm",
    "hermitian_power",
    "derivation",
    "random_unitary",
    "match_spectra",
]


def as_matrix(M, name="matrix", square=False):
    """Return ``M`` as a finite complex128 2-D array (a copy only if needed)."""
    M = np.asarray(M)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {M.shape}")
    if M.shape[0] == 0 or M.shape[1] == 0:
        raise DimensionMismatch(f"{name} must be non-empty, got shape {M.shape}")
    M = M.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(M)):
        raise NonFiniteEntries(f"{name} has NaN or Inf entries")
    if square and M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {M.shape}")
    return M


def adjoint(M):
    return as_matrix(M).conj().T


def fro(M):
    return float(np.linalg.norm(M))


def derivation(A, X, B=None):
    """The generalized derivation ``A X - X B`` (``B = A`` when omitted)."""
    if B is None:
        B = A
    return A @ X - X @ B


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues with multiplicity plus the worst relative eigenpair residual.

    ``backward_error`` is ``max_j ||M v_j - l_j v_j|| / (||M||_F ||v_j||)``: each
    computed eigenvalue is exact for a perturbation of at most that relative
    size. Pencil spectra may contain ``inf`` entries.
    """

    eigenvalues: np.ndarray
    backward_error: float

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def finite(self):
        return self.eigenvalues[np.isfinite(self.eigenvalues)]

    @property
    def radius(self):
        return float(np.max(np.abs(self.eigenvalues)))


def solve_linear(A, B, config=DEFAULT):
    """Solve ``A X = B`` by LU with partial pivoting.

    Raises :class:`SingularMatrix` when a pivot is below
    ``config.rank_tol * ||A||_F``.
    """
    A = as_matrix(A, "A", square=True)
    B = np.asarray(B, dtype=np.complex128)
    if B.shape[0] != A.shape[0]:
        raise DimensionMismatch(
            f"right-hand side has {B.shape[0]} rows, A is {A.shape[0]}x{A.shape[0]}")
    scale = fro(A)
    if scale == 0.0:
        raise SingularMatrix("coefficient matrix is zero")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if pivots.min() < config.rank_tol * scale:
        raise SingularMatrix(
            f"pivot {pivots.min():.3e} below rank tolerance "
            f"{config.rank_tol:.1e} * ||A||_F = {config.rank_tol * scale:.3e}")
    return sla.lu_solve((lu, piv), B, check_finite=False)


def eigenvalues(M, config=DEFAULT):
    M = as_matrix(M, square=True)
    try:
        w, V = sla.eig(M, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"QR iteration did not converge: {exc}") from exc
    scale = fro(M)
    if scale == 0.0:
        return Spectrum(w, 0.0)
    R = M @ V - V * w
    berr = float(np.max(np.linalg.norm(R, axis=0) / np.linalg.norm(V, axis=0)) / scale)
    if berr > config.eig_tol:
        raise NoConvergence(
            f"eigenpair backward error {berr:.2e} exceeds eig_tol {config.eig_tol:.1e}")
    return Spectrum(w, berr)


def pencil_eigenvalues(A, C, config=DEFAULT):
    """Generalized eigenvalues: the ``l`` for which ``l C - A`` is singular.

    Infinite eigenvalues (from singular ``C``) are returned as ``inf``.
    Raises :class:`SingularPencil` if ``l C - A`` is singular for every ``l``.
    """
    A = as_matrix(A, "A", square=True)
    C = as_matrix(C, "C", square=True)
    if A.shape != C.shape:
        raise DimensionMismatch(f"pencil blocks differ in shape: {A.shape} vs {C.shape}")
    try:
        ab, V = sla.eig(A, C, homogeneous_eigvals=True, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"QZ iteration did not converge: {exc}") from exc
    alpha, beta = ab
    nA, nC = fro(A), fro(C)
    tiny_a = config.eig_tol * max(nA, 1e-300)
    tiny_b = config.eig_tol * max(nC, 1e-300)
    if np.any((np.abs(alpha) <= tiny_a) & (np.abs(beta) <= tiny_b)):
        raise SingularPencil("pencil l*C - A is singular for every l")
    infinite = np.abs(beta) <= tiny_b
    lam = np.full(alpha.shape, np.inf, dtype=np.complex128)
    lam[~infinite] = alpha[~infinite] / beta[~infinite]
    R = (A @ V) * beta - (C @ V) * alpha
    denom = (np.abs(beta) * nA + np.abs(alpha) * nC) * np.linalg.norm(V, axis=0)
    resid = np.linalg.norm(R, axis=0)
    # denom vanishes only with A = 0 and a finite eigenvalue 0, where R = 0 too
    berr = float(np.max(np.divide(resid, denom, out=np.zeros_like(resid), where=denom > 0)))
    if berr > config.eig_tol:
        raise NoConvergence(
            f"pencil eigenpair backward error {berr:.2e} exceeds eig_tol {config.eig_tol:.1e}")
    return Spectrum(lam, berr)


def matrix_exp(M):
    return sla.expm(as_matrix(M, square=True))


def kron(A, B):
    return np.kron(np.asarray(A), np.asarray(B))


def vec(M):
    """Stack the columns of ``M`` into a 1-D array."""
    return np.asarray(M).reshape(-1, order="F")


def unvec(v, rows, cols):
    v = np.asarray(v)
    if v.size != rows * cols:
        raise DimensionMismatch(f"cannot unvec {v.size} entries into {rows}x{cols}")
    return v.reshape((rows, cols), order="F")


def singular_values(M):
    """Singular values in decreasing order, ``min(rows, cols)`` of them."""
    M = as_matrix(M)
    G = M.conj().T @ M if M.shape[1] <= M.shape[0] else M @ M.conj().T
    w = np.linalg.eigvalsh(G)
    return np.sqrt(np.clip(w, 0.0, None))[::-1]


def schatten_norm(M, p):
    """``(sum_i s_i**p)**(1/p)``; ``p = inf`` gives the operator norm."""
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InvalidIndex(f"Schatten index must be a real number, got {p!r}") from None
    if not p >= 1.0:
        raise InvalidIndex(f"Schatten index must satisfy p >= 1, got {p}")
    s = singular_values(M)
    top = s[0]
    if np.isinf(p) or top == 0.0:
        return float(top)
    # scaled to keep large p from overflowing
    return float(top * np.sum((s / top) ** p) ** (1.0 / p))


def operator_norm(M):
    return schatten_norm(M, np.inf)


def hermitian_power(M, q, config=DEFAULT):
    """``M**q`` for Hermitian positive semidefinite ``M``."""
    if not q > 0:
        raise ValueError(f"exponent must be positive, got {q}")
    M = as_matrix(M, square=True)
    scale = fro(M)
    if fro(M - M.conj().T) > config.psd_tol * scale:
        raise NotHermitianPSD("matrix is not Hermitian within psd_tol")
    w, V = np.linalg.eigh((M + M.conj().T) / 2)
    if w.size and w.min() < -config.psd_tol * scale:
        raise NotHermitianPSD(f"minimum eigenvalue {w.min():.3e} is negative beyond psd_tol")
    w = np.clip(w, 0.0, None) ** q
    return (V * w) @ V.conj().T


def random_unitary(n, rng):
    """Orthonormalized complex Gaussian matrix, phases fixed so the law is Haar."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def match_spectra(a, b):
    """Largest distance in the optimal one-to-one pairing of two multisets."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    if a.size != b.size:
        raise DimensionMismatch(f"multisets differ in size: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
