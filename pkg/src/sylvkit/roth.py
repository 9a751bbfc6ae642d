"""Roth-type similarity, Fuglede-Putnam checks and operator classes.

The pair ``(A, B)`` has the Fuglede-Putnam property when every intertwiner
``C`` (``A C = C B``) also satisfies ``A* C = C B*``. For matrices the
intertwiners form the nullspace of ``I (x) A - B^T (x) I``, so the property
reduces to a numerical-rank decision plus a finite check on that subspace.
Memory scales as ``(n m)^2`` for the Kronecker matrix.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT
from .core import as_matrix, fro, hermitian_power, singular_values, solve_linear, unvec, vec
from .equations import Sylvester
from .errors import (
    DimensionMismatch,
    FPHypothesisFails,
    GramBlockSingular,
    NotASolution,
    NotIntertwining,
    SingularMatrix,
)
from .solvers import Method, SolveReport

__all__ = [
    "BlockTransform",
    "FPReport",
    "check_fp_pair",
    "solve_from_similarity",
    "roth_similarity_from_solution",
    "Solvability",
    "SolvabilityReport",
    "is_solvable",
    "ClassQuery",
    "ClassResult",
    "check_operator_class",
]


@dataclass(frozen=True, eq=False)
class BlockTransform:
    """2 x 2 block matrix ``[[Q, R], [S, T]]`` acting on a direct sum."""

    Q: np.ndarray
    R: np.ndarray
    S: np.ndarray
    T: np.ndarray
    invertible: bool = field(init=False)
    sigma_min: float = field(init=False)

    def __post_init__(self):
        for name in "QRST":
            object.__setattr__(self, name, as_matrix(getattr(self, name), name))
        p, q = self.Q.shape
        r, s = self.T.shape
        if (self.R.shape != (p, s) or self.S.shape != (r, q)):
            raise DimensionMismatch(
                f"blocks are not conformal: Q{self.Q.shape} R{self.R.shape} "
                f"S{self.S.shape} T{self.T.shape}")
        sv = singular_values(self.matrix)
        object.__setattr__(self, "sigma_min", float(sv[-1]))
        object.__setattr__(self, "invertible",
                           p + r == q + s and bool(sv[-1] > DEFAULT.rank_tol * sv[0]))

    @property
    def matrix(self):
        return np.block([[self.Q, self.R], [self.S, self.T]])

    @classmethod
    def from_matrix(cls, W, rows, cols=None):
        """Split ``W`` after ``rows`` rows and ``cols`` columns (default ``rows``)."""
        W = as_matrix(W, "W")
        cols = rows if cols is None else cols
        return cls(W[:rows, :cols], W[:rows, cols:], W[rows:, :cols], W[rows:, cols:])


@dataclass(eq=False)
class FPReport:
    """Outcome of a Fuglede-Putnam check for the pair ``(A, B)``.

    ``worst_violation`` is the largest ``||A* C - C B*||_F`` over all
    unit-Frobenius-norm intertwiners ``C`` (the norm of that linear map
    restricted to the intertwiner space), so it does not depend on which
    orthonormal basis the SVD happened to return. ``basis_violations`` lists
    the per-basis-element values. ``singular_gap`` holds the largest
    singular value treated as zero and the smallest one kept.
    """

    intertwiner_dim: int
    basis: list
    fp_holds: bool
    worst_violation: float
    vacuous: bool
    basis_violations: list
    singular_gap: tuple

    def to_dict(self, include_basis=True):
        out = {
            "intertwiner_dim": self.intertwiner_dim,
            "fp_holds": self.fp_holds,
            "vacuous": self.vacuous,
            "worst_violation": self.worst_violation,
            "basis_violations": self.basis_violations,
            "singular_gap": list(self.singular_gap),
        }
        if include_basis:
            out["basis"] = [[[[float(z.real), float(z.imag)] for z in row] for row in C]
                            for C in self.basis]
        return out


def _intertwiner_svd(A, B):
    n, m = A.shape[0], B.shape[0]
    K = np.kron(np.eye(m), A) - np.kron(B.T, np.eye(n))
    _, s, Vh = np.linalg.svd(K)
    return s, Vh


def check_fp_pair(A, B, config=DEFAULT):
    """Does ``A C = C B`` imply ``A* C = C B*``?

    An empty intertwiner space makes the property hold vacuously; that case
    is flagged through ``vacuous``.
    """
    A = as_matrix(A, "A", square=True)
    B = as_matrix(B, "B", square=True)
    n, m = A.shape[0], B.shape[0]
    s, Vh = _intertwiner_svd(A, B)
    cut = config.null_tol * s[0]
    null = s <= cut
    dim = int(null.sum())
    kept = s[~null]
    gap = (float(s[null].max()) if dim else None, float(kept.min()) if kept.size else None)
    basis = [unvec(v, n, m) for v in Vh[null].conj()]
    Ah, Bh = A.conj().T, B.conj().T
    images = [Ah @ C - C @ Bh for C in basis]
    violations = [fro(F) for F in images]
    if dim:
        worst = float(np.linalg.norm(np.column_stack([vec(F) for F in images]), 2))
    else:
        worst = 0.0
    return FPReport(dim, basis, worst <= config.fp_tol, worst, dim == 0, violations, gap)


def roth_similarity_from_solution(A, B, C, X, config=DEFAULT):
    """``W = [[I, X], [0, I]]`` for a solution of ``A X - X B = C``.

    Then ``blockdiag(A, B) W = W [[A, C], [0, B]]``, i.e.
    ``W^-1 blockdiag(A, B) W = [[A, C], [0, B]]`` with ``W^-1 = [[I, -X], [0, I]]``.
    """
    eq = Sylvester(A, B, C)
    X = as_matrix(X, "X")
    if X.shape != eq.shape:
        raise DimensionMismatch(f"X must have shape {eq.shape}, got {X.shape}")
    res = eq.residual(X)
    if res > config.sim_tol * eq.scale(X):
        raise NotASolution(f"||AX - XB - C||_F = {res:.3e} is not within sim_tol")
    n, m = eq.shape
    return BlockTransform(np.eye(n), X, np.zeros((m, n)), np.eye(m))


def _gram_inverse_check(G, name, config):
    w = np.linalg.eigvalsh((G + G.conj().T) / 2)
    if w.min() <= config.rank_tol * max(w.max(), 1e-300):
        raise GramBlockSingular(
            f"{name} has minimum eigenvalue {w.min():.3e}; the block transform "
            "cannot be invertible to working precision")
    return float(w.min())


def solve_from_similarity(N, A, C, W, order="NA", config=DEFAULT, check_fp=True):
    """Read a solution off an invertible intertwining block transform.

    ``order="NA"`` solves ``N X - X A = C`` given
    ``blockdiag(N, A) W = W [[N, C], [0, A]]`` and returns
    ``X = (S*S + Q*Q)^-1 (Q*R + S*T)``; the pair ``(A, N)`` must have the
    Fuglede-Putnam property.

    ``order="AN"`` solves ``A X - X N = C`` given
    ``W blockdiag(A, N) = [[A, C], [0, N]] W`` and returns
    ``X = -(Q S* + R T*)(S S* + T T*)^-1``; the pair ``(N, A)`` must have the
    property. (This ``W`` is the inverse of the transform in the ``NA`` form.)
    """
    N = as_matrix(N, "N", square=True)
    A = as_matrix(A, "A", square=True)
    C = as_matrix(C, "C")
    if not isinstance(W, BlockTransform):
        rows = N.shape[0] if order == "NA" else A.shape[0]
        W = BlockTransform.from_matrix(W, rows)
    if order == "NA":
        eq = Sylvester(N, A, C)
        first, second = N, A
    elif order == "AN":
        eq = Sylvester(A, N, C)
        first, second = A, N
    else:
        raise ValueError(f"order must be 'NA' or 'AN', got {order!r}")
    n, m = eq.shape
    if W.Q.shape != (n, n) or W.T.shape != (m, m):
        raise DimensionMismatch(
            f"W blocks Q{W.Q.shape}, T{W.T.shape} do not match the {n}x{m} equation")
    if not W.invertible:
        raise SingularMatrix(f"W is not invertible (sigma_min = {W.sigma_min:.3e})")

    Wm = W.matrix
    D = np.block([[first, np.zeros((n, m))], [np.zeros((m, n)), second]])
    Tri = np.block([[first, eq.C], [np.zeros((m, n)), second]])
    mismatch = D @ Wm - Wm @ Tri if order == "NA" else Wm @ D - Tri @ Wm
    tol = config.sim_tol * (fro(D) + fro(Tri)) * fro(Wm)
    if fro(mismatch) > tol:
        raise NotIntertwining(
            f"W does not intertwine the block matrices: mismatch {fro(mismatch):.3e} > {tol:.3e}")

    if check_fp:
        pair = (A, N) if order == "NA" else (N, A)
        fp = check_fp_pair(*pair, config=config)
        if not fp.fp_holds:
            label = "(A, N)" if order == "NA" else "(N, A)"
            raise FPHypothesisFails(
                f"pair {label} violates the Fuglede-Putnam property "
                f"(worst violation {fp.worst_violation:.3e})")

    Q, R, S, T = W.Q, W.R, W.S, W.T
    if order == "NA":
        G = S.conj().T @ S + Q.conj().T @ Q
        gmin = _gram_inverse_check(G, "S*S + Q*Q", config)
        X = solve_linear(G, Q.conj().T @ R + S.conj().T @ T, config)
    else:
        G = S @ S.conj().T + T @ T.conj().T
        gmin = _gram_inverse_check(G, "SS* + TT*", config)
        Z = Q @ S.conj().T + R @ T.conj().T
        X = -solve_linear(G.conj().T, Z.conj().T, config).conj().T
    scale = eq.scale(X)
    return SolveReport(X, eq.residual(X), Method.SIMILARITY, None,
                       {"order": order, "gram_min_eig": gmin, "w_sigma_min": W.sigma_min},
                       scale if scale > 0 else 1.0)


class Solvability(str, enum.Enum):
    UNIQUE = "unique"
    NONUNIQUE = "solvable_nonunique"
    UNSOLVABLE = "unsolvable"


@dataclass(eq=False)
class SolvabilityReport:
    """Classification of ``A X - X B = C``.

    ``X`` is the unique solution, the minimum-norm solution, or the
    minimum-norm least-squares solution. ``witness`` is the block transform
    realizing Roth's similarity when a solution exists.
    """

    status: Solvability
    X: np.ndarray
    residual: float
    rank: int
    witness: BlockTransform | None


def is_solvable(A, B, C, config=DEFAULT):
    eq = Sylvester(A, B, C)
    n, m = eq.shape
    K = eq.kron_operator()
    s = np.linalg.svd(K, compute_uv=False)
    rank = int(np.sum(s > config.null_tol * s[0])) if s[0] > 0 else 0
    if rank == n * m:
        X = unvec(solve_linear(K, vec(eq.C), config), n, m)
        status = Solvability.UNIQUE
    else:
        x = np.linalg.lstsq(K, vec(eq.C), rcond=config.null_tol)[0]
        X = unvec(x, n, m)
        consistent = eq.residual(X) <= config.sim_tol * eq.scale(X)
        status = Solvability.NONUNIQUE if consistent else Solvability.UNSOLVABLE
    residual = eq.residual(X)
    witness = None
    if status is not Solvability.UNSOLVABLE:
        witness = roth_similarity_from_solution(eq.A, eq.B, eq.C, X, config)
    return SolvabilityReport(status, X, residual, rank, witness)


CLASS_KINDS = ("normal", "hyponormal", "p_hyponormal", "k_quasihyponormal", "quasihyponormal")


@dataclass(frozen=True)
class ClassQuery:
    kind: str
    p: float | None = None
    k: int | None = None

    def __post_init__(self):
        if self.kind not in CLASS_KINDS:
            raise ValueError(f"unknown operator class {self.kind!r}; expected one of {CLASS_KINDS}")
        if self.kind == "p_hyponormal" and not (self.p is not None and 0 < self.p <= 1):
            raise ValueError(f"p-hyponormal needs 0 < p <= 1, got {self.p}")
        if self.kind == "k_quasihyponormal" and not (
                self.k is not None and int(self.k) == self.k and self.k >= 1):
            raise ValueError(f"k-quasihyponormal needs a positive integer k, got {self.k}")


@dataclass(frozen=True)
class ClassResult:
    holds: bool
    margin: float
    tolerance: float


def check_operator_class(A, query, config=DEFAULT):
    """Test membership in a class defined by a positivity condition.

    ``margin`` is the minimum eigenvalue of the class-defining Hermitian
    matrix (for ``normal``, minus the spectral norm of ``A*A - AA*``);
    membership holds when ``margin >= -tolerance``, with the tolerance
    ``psd_tol`` relative to the size of the terms being compared. The
    p-hyponormal test compares ``(A*A)^(2p)`` with ``(AA*)^(2p)``.
    """
    if isinstance(query, str):
        query = ClassQuery(query)
    A = as_matrix(A, "A", square=True)
    Ah = A.conj().T
    AhA, AAh = Ah @ A, A @ Ah
    self_commutator = AhA - AAh
    kind = query.kind
    if kind == "normal":
        margin = -float(np.linalg.norm(self_commutator, 2))
        scale = fro(AhA)
    elif kind == "hyponormal":
        H, scale = self_commutator, fro(AhA)
    elif kind == "p_hyponormal":
        left = hermitian_power(AhA, 2 * query.p, config)
        H, scale = left - hermitian_power(AAh, 2 * query.p, config), fro(left)
    else:
        k = 1 if kind == "quasihyponormal" else int(query.k)
        Ak = np.linalg.matrix_power(A, k)
        H = Ak.conj().T @ self_commutator @ Ak
        scale = fro(AhA) * fro(Ak) ** 2
    if kind != "normal":
        margin = float(np.linalg.eigvalsh((H + H.conj().T) / 2).min())
    tol = config.psd_tol * max(scale, 1e-300)
    return ClassResult(margin >= -tol, margin, tol)
