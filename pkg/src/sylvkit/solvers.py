"""Solution formulas for Sylvester, pencil, Stein and Monkeypox equations.

Every solver returns a :class:`SolveReport` whose ``residual_fro`` is the
substitution residual recomputed from the returned ``X``. Iterative solvers
(contour quadrature, series, exponential integral) also stop on that
recomputed residual or on an explicit tail bound, never on spectral gaps
alone: non-normal coefficients can have large resolvents well away from
their eigenvalues.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .config import DEFAULT
from .core import (
    Spectrum,
    eigenvalues,
    fro,
    matrix_exp,
    operator_norm,
    pencil_eigenvalues,
    solve_linear,
    unvec,
    vec,
)
from .equations import Monkeypox, Pencil, Stein, Sylvester
from .errors import (
    InconsistentSystem,
    NoConvergence,
    NoSeparatingCircle,
    NotAnnulusSeparated,
    NotHalfplaneSeparated,
    QuadratureNotConverged,
    SingularMatrix,
    SpectraNotDisjoint,
    SpectralRadiusTooLarge,
    SylvkitError,
)

__all__ = [
    "Method",
    "ContourSpec",
    "SeparationReport",
    "SolveReport",
    "spectral_separation",
    "pencil_separation",
    "auto_contour",
    "solve_direct",
    "solve_sylvester_direct",
    "solve_pencil_direct",
    "solve_sylvester_contour",
    "solve_pencil_contour",
    "solve_stein_series",
    "solve_sylvester_exp_integral",
    "solve_sylvester_power_series",
    "solve_monkeypox",
    "solve",
]


class Method(str, enum.Enum):
    DIRECT = "direct"
    CONTOUR = "contour"
    STEIN = "stein"
    EXP_INTEGRAL = "exp_integral"
    POWER_SERIES = "power_series"
    FACTORED = "factored"
    SIMILARITY = "similarity"


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``center + radius * exp(i theta)`` sampled at ``nodes`` points."""

    center: complex
    radius: float
    nodes: int = 32

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError(f"contour radius must be positive, got {self.radius}")
        if int(self.nodes) != self.nodes or self.nodes < 8 or self.nodes % 2:
            raise ValueError(f"contour nodes must be an even integer >= 8, got {self.nodes}")

    def to_dict(self):
        c = self.center
        return {"center": [c.real, c.imag], "radius": self.radius, "nodes": int(self.nodes)}


@dataclass(frozen=True, eq=False)
class SeparationReport:
    """Geometry of two spectra.

    ``halfplane_margin`` is ``min Re sigma_a - max Re sigma_b`` and
    ``annulus_ratio`` is ``max |sigma_b| / min |sigma_a|``; either is ``None``
    when undefined (infinite pencil eigenvalues, or ``0`` in ``sigma_a`` for
    the ratio).
    """

    spectrum_a: Spectrum
    spectrum_b: Spectrum
    min_gap: float
    disjoint: bool
    halfplane_margin: float | None
    annulus_ratio: float | None

    def to_dict(self):
        def pairs(spec):
            return [[float(z.real), float(z.imag)] for z in spec.eigenvalues]

        return {
            "spectrum_a": pairs(self.spectrum_a),
            "spectrum_b": pairs(self.spectrum_b),
            "backward_error_a": self.spectrum_a.backward_error,
            "backward_error_b": self.spectrum_b.backward_error,
            "min_gap": self.min_gap,
            "disjoint": self.disjoint,
            "halfplane_margin": self.halfplane_margin,
            "annulus_ratio": self.annulus_ratio,
        }


@dataclass(eq=False)
class SolveReport:
    X: np.ndarray
    residual_fro: float
    method: Method
    diagnostics: SeparationReport | None
    work: dict = field(default_factory=dict)
    scale: float = 1.0

    @property
    def relative_residual(self):
        return self.residual_fro / self.scale if self.scale > 0 else self.residual_fro

    def to_dict(self):
        return {
            "method": self.method.value,
            "residual_fro": self.residual_fro,
            "residual_scale": self.scale,
            "relative_residual": self.relative_residual,
            "X": [[[float(z.real), float(z.imag)] for z in row] for row in self.X],
            "work": self.work,
            "separation": None if self.diagnostics is None else self.diagnostics.to_dict(),
        }


def _report(eq, X, method, diagnostics, **work):
    scale = eq.scale(X)
    return SolveReport(X, eq.residual(X), method, diagnostics, work, scale if scale > 0 else 1.0)


def _separation(spec_a, spec_b, config):
    a, b = spec_a.eigenvalues, spec_b.eigenvalues
    inf_a, inf_b = ~np.isfinite(a), ~np.isfinite(b)
    fa, fb = a[~inf_a], b[~inf_b]
    gaps = [np.abs(fa[:, None] - fb[None, :]).min()] if fa.size and fb.size else []
    if inf_a.any() and inf_b.any():
        gaps.append(0.0)
    min_gap = float(min(gaps)) if gaps else math.inf
    halfplane = annulus = None
    if not inf_a.any() and not inf_b.any():
        halfplane = float(fa.real.min() - fb.real.max())
        amin = np.abs(fa).min()
        if amin > 0:
            annulus = float(np.abs(fb).max() / amin)
    return SeparationReport(spec_a, spec_b, min_gap, min_gap > config.sep_tol, halfplane, annulus)


def spectral_separation(A, B, config=DEFAULT):
    """Compare ``sigma(A)`` with ``sigma(B)``."""
    return _separation(eigenvalues(A, config), eigenvalues(B, config), config)


def pencil_separation(A, B, C, D, config=DEFAULT):
    """Compare ``sigma(C, A)`` (``l C - A`` singular) with ``sigma(B, D)`` (``l B - D`` singular)."""
    return _separation(pencil_eigenvalues(A, C, config), pencil_eigenvalues(D, B, config), config)


def auto_contour(sep, config=DEFAULT, nodes=None):
    """Circle around ``sep.spectrum_a`` that excludes ``sep.spectrum_b``.

    Centered at the centroid of ``sigma_a``; the radius reaches halfway
    across the gap to the nearest point of ``sigma_b``.
    """
    a = sep.spectrum_a.eigenvalues
    if not np.all(np.isfinite(a)):
        raise NoSeparatingCircle("inner spectrum has infinite eigenvalues")
    b = sep.spectrum_b.finite
    center = complex(a.mean())
    inner = float(np.abs(a - center).max())
    if b.size == 0:
        radius = inner + max(inner, 1.0)
    else:
        gap = float(np.abs(b - center).min()) - inner
        if gap <= config.sep_tol:
            raise NoSeparatingCircle(
                "no circle about the centroid of the inner spectrum excludes the outer one "
                f"(gap {gap:.3e})")
        radius = inner + gap / 2
    return ContourSpec(center, radius, nodes or config.contour_start_nodes)


def _check_contour(contour, sep, config):
    a = sep.spectrum_a.eigenvalues
    if not np.all(np.isfinite(a)):
        raise NoSeparatingCircle("inner spectrum has infinite eigenvalues")
    if np.abs(a - contour.center).max() >= contour.radius - config.sep_tol:
        raise NoSeparatingCircle("contour does not strictly enclose the inner spectrum")
    b = sep.spectrum_b.finite
    if b.size and np.abs(b - contour.center).min() <= contour.radius + config.sep_tol:
        raise NoSeparatingCircle("contour does not strictly exclude the outer spectrum")


def _contour_nodes_sum(pencil, lam, center):
    """``sum_k (lam_k - center) (lam_k C - A)^-1 E (lam_k B - D)^-1``."""
    A, B, C, D, E = pencil.A, pencil.B, pencil.C, pencil.D, pencil.E
    L = lam[:, None, None] * C - A
    R = lam[:, None, None] * B - D
    Z = np.linalg.solve(L, np.broadcast_to(E, (lam.size,) + E.shape))
    W = np.linalg.solve(R.transpose(0, 2, 1), Z.transpose(0, 2, 1)).transpose(0, 2, 1)
    return np.sum((lam - center)[:, None, None] * W, axis=0)


def _contour_quadrature(pencil, eq, contour, config, sep, tol):
    """Trapezoid rule on the circle, doubling nodes (reusing old ones) until converged."""
    tol = config.contour_tol if tol is None else tol
    n_nodes = int(contour.nodes)
    center, radius = contour.center, contour.radius
    theta = 2 * np.pi * np.arange(n_nodes) / n_nodes
    total = _contour_nodes_sum(pencil, center + radius * np.exp(1j * theta), center)
    history = []
    best = None
    while True:
        X = total / n_nodes
        report = _report(eq, X, Method.CONTOUR, sep, nodes=n_nodes,
                         contour=contour.to_dict(), residual_history=history)
        history.append([n_nodes, report.residual_fro])
        if best is None or report.residual_fro < best.residual_fro:
            best = report
        if report.residual_fro <= tol * report.scale:
            return report
        if 2 * n_nodes > config.max_nodes:
            break
        # odd nodes of the doubled grid
        theta = 2 * np.pi * (2 * np.arange(n_nodes) + 1) / (2 * n_nodes)
        total = total + _contour_nodes_sum(pencil, center + radius * np.exp(1j * theta), center)
        n_nodes *= 2
    raise QuadratureNotConverged(
        f"contour quadrature reached {n_nodes} nodes with relative residual "
        f"{best.relative_residual:.3e} > {tol:.1e}", best)


def solve_direct(eq, config=DEFAULT):
    """Solve any equation through its Kronecker form ``K vec(X) = vec(RHS)``."""
    n, m = eq.shape
    try:
        x = solve_linear(eq.kron_operator(), vec(eq.rhs), config)
    except SingularMatrix as exc:
        if isinstance(eq, Monkeypox):
            raise
        raise SpectraNotDisjoint(f"Kronecker operator is singular: {exc}") from exc
    if isinstance(eq, Sylvester):
        sep = spectral_separation(eq.A, eq.B, config)
    elif isinstance(eq, Pencil):
        sep = pencil_separation(eq.A, eq.B, eq.C, eq.D, config)
    elif isinstance(eq, Stein):
        p = eq.as_pencil()
        sep = pencil_separation(p.A, p.B, p.C, p.D, config)
    else:
        sep = None
    return _report(eq, unvec(x, n, m), Method.DIRECT, sep, unknowns=n * m)


def solve_sylvester_direct(A, B, C, config=DEFAULT):
    """``A X - X B = C`` via ``(I_m (x) A - B^T (x) I_n) vec(X) = vec(C)``."""
    return solve_direct(Sylvester(A, B, C), config)


def solve_pencil_direct(A, B, C, D, E, config=DEFAULT):
    """``A X B - C X D = E`` via ``(B^T (x) A - D^T (x) C) vec(X) = vec(E)``."""
    return solve_direct(Pencil(A, B, C, D, E), config)


def solve_sylvester_contour(A, B, C, contour=None, config=DEFAULT, tol=None):
    """``A X - X B = C`` as ``(1/2 pi i) oint (l - A)^-1 C (l - B)^-1 dl``.

    The circle must enclose ``sigma(A)`` and exclude ``sigma(B)``; with
    ``contour=None`` one is constructed by :func:`auto_contour`.
    """
    eq = Sylvester(A, B, C)
    n, m = eq.shape
    sep = spectral_separation(eq.A, eq.B, config)
    contour = auto_contour(sep, config) if contour is None else contour
    _check_contour(contour, sep, config)
    pencil = Pencil(eq.A, np.eye(m), np.eye(n), eq.B, eq.C)
    return _contour_quadrature(pencil, eq, contour, config, sep, tol)


def solve_pencil_contour(A, B, C, D, E, contour=None, config=DEFAULT, tol=None):
    """``A X B - C X D = E`` as ``(1/2 pi i) oint (l C - A)^-1 E (l B - D)^-1 dl``.

    The circle encloses ``sigma(C, A)`` and excludes ``sigma(B, D)``. Since
    the enclosed pencil spectrum must be bounded, ``C`` has to be invertible.
    """
    eq = Pencil(A, B, C, D, E)
    sep = pencil_separation(eq.A, eq.B, eq.C, eq.D, config)
    contour = auto_contour(sep, config) if contour is None else contour
    _check_contour(contour, sep, config)
    return _contour_quadrature(eq, eq, contour, config, sep, tol)


def _decay_ratio(norms, cap):
    """Geometric mean of the last three successive term-norm ratios, uncapped."""
    if len(norms) < 2:
        return cap
    if norms[-1] == 0.0:
        return 0.0
    recent = norms[-4:]
    ratios = [b / a for a, b in zip(recent, recent[1:]) if a > 0]
    if not ratios:
        return cap
    return float(np.prod(ratios) ** (1.0 / len(ratios)))


def solve_stein_series(T1, T2, Y, tol=None, config=DEFAULT):
    """``T1 X T2 - X = Y`` by ``X = -sum_k T1^k Y T2^k``.

    Summation stops at the first ``K`` with
    ``||T1^(K+1)|| ||Y|| ||T2^(K+1)|| / (1 - g) <= tol ||Y||``, where ``g`` is
    the smoothed term-decay ratio capped at ``config.ratio_cap``.
    """
    eq = Stein(T1, T2, Y)
    tol = config.series_tol if tol is None else tol
    T1, T2, Y = eq.T1, eq.T2, eq.Y
    p = eq.as_pencil()
    sep = pencil_separation(p.A, p.B, p.C, p.D, config)
    r1 = eigenvalues(T1, config).radius
    r2 = eigenvalues(T2, config).radius
    if r1 * r2 >= 1.0 - config.series_margin:
        raise SpectralRadiusTooLarge(
            f"rho(T1) * rho(T2) = {r1 * r2:.6g} is not below 1 - {config.series_margin:g}")
    nY = fro(Y)
    P1, P2 = T1.copy(), T2.copy()
    term = Y
    X = -Y.copy()
    norms = [nY]
    K = 0
    while True:
        raw = _decay_ratio(norms, config.ratio_cap)
        g = min(raw, config.ratio_cap)
        tail = fro(P1) * nY * fro(P2) / (1.0 - g)
        if tail <= tol * nY:
            break
        if K >= config.series_max_terms:
            raise NoConvergence(f"Stein series exceeded {config.series_max_terms} terms")
        term = T1 @ term @ T2
        X -= term
        K += 1
        norms.append(fro(term))
        P1 = T1 @ P1
        P2 = P2 @ T2
    return _report(eq, X, Method.STEIN, sep, terms=K + 1, tail_bound=float(tail),
                   decay_ratio=g, decay_ratio_raw=raw,
                   spectral_radii=[float(r1), float(r2)])


def solve_sylvester_power_series(A, B, Y, tol=None, config=DEFAULT):
    """``A X - X B = Y`` by ``X = sum_n A^(-n-1) Y B^n``.

    Needs ``min |sigma(A)| > max |sigma(B)|``. Stops when the geometric tail
    estimate ``||term|| g / (1 - g)`` drops below ``tol ||X||``.
    """
    eq = Sylvester(A, B, Y)
    tol = config.series_tol if tol is None else tol
    A, B, Y = eq.A, eq.B, eq.C
    sep = spectral_separation(A, B, config)
    inner = float(np.abs(sep.spectrum_a.eigenvalues).min())
    outer = float(np.abs(sep.spectrum_b.eigenvalues).max())
    if not inner > outer + config.series_margin:
        raise NotAnnulusSeparated(
            f"min |sigma(A)| = {inner:.6g} does not exceed max |sigma(B)| = {outer:.6g}")
    Ainv = solve_linear(A, np.eye(A.shape[0]), config)
    term = Ainv @ Y
    X = term.copy()
    norms = [fro(term)]
    n_terms = 1
    while True:
        raw = _decay_ratio(norms, config.ratio_cap)
        g = min(raw, config.ratio_cap)
        tail = norms[-1] * g / (1.0 - g)
        if tail <= tol * fro(X):
            break
        if n_terms >= config.series_max_terms:
            raise NoConvergence(f"power series exceeded {config.series_max_terms} terms")
        term = Ainv @ term @ B
        X += term
        n_terms += 1
        norms.append(fro(term))
    return _report(eq, X, Method.POWER_SERIES, sep, terms=n_terms, tail_estimate=float(tail),
                   decay_ratio=g, decay_ratio_raw=raw)


def _exp_integral(A, B, Y, T, panels, order):
    """Composite Gauss-Legendre for ``int_0^T exp(-tA) Y exp(tB) dt``."""
    h = T / panels
    x, w = leggauss(order)
    s = h * (x + 1) / 2
    EA = np.stack([matrix_exp(-si * A) for si in s])
    EB = np.stack([matrix_exp(si * B) for si in s])
    stepA, stepB = matrix_exp(-h * A), matrix_exp(h * B)
    weights = (h / 2) * w
    PA = np.eye(A.shape[0], dtype=complex)
    PB = np.eye(B.shape[0], dtype=complex)
    X = np.zeros(Y.shape, dtype=complex)
    for _ in range(panels):
        left = (PA @ EA) @ Y
        X += np.tensordot(weights, left @ (EB @ PB), axes=1)
        PA = PA @ stepA
        PB = PB @ stepB
    return X


def solve_sylvester_exp_integral(A, B, Y, tol=None, config=DEFAULT):
    """``A X - X B = Y`` by ``X = int_0^inf exp(-tA) Y exp(tB) dt``.

    Needs a vertical strip of width ``d > 0`` between ``sigma(B)`` (left)
    and ``sigma(A)`` (right). The integral is truncated at
    ``T = safety * ln(1/tol) / d``, where the integrand has decayed like
    ``exp(-T d)``, and the panel count doubles until the relative
    substitution residual is at most ``tol``.
    """
    eq = Sylvester(A, B, Y)
    tol = config.exp_integral_tol if tol is None else tol
    A, B, Y = eq.A, eq.B, eq.C
    sep = spectral_separation(A, B, config)
    d = sep.halfplane_margin
    if not d > 0:
        raise NotHalfplaneSeparated(
            f"min Re sigma(A) - max Re sigma(B) = {d:.6g} is not positive")
    if fro(Y) == 0.0:
        return _report(eq, np.zeros_like(Y), Method.EXP_INTEGRAL, sep, panels=0, horizon=0.0)
    T = config.exp_safety * math.log(1.0 / tol) / d
    panels = max(8, math.ceil(T * (operator_norm(A) + operator_norm(B)) / 2))
    best = None
    history = []
    while True:
        X = _exp_integral(A, B, Y, T, panels, config.gl_order)
        report = _report(eq, X, Method.EXP_INTEGRAL, sep, panels=panels, horizon=T,
                         gl_order=config.gl_order, residual_history=history)
        history.append([panels, report.residual_fro])
        if best is None or report.residual_fro < best.residual_fro:
            best = report
        if report.residual_fro <= tol * report.scale:
            return report
        if 2 * panels > config.max_panels:
            break
        panels *= 2
    raise QuadratureNotConverged(
        f"exponential integral reached {panels} panels with relative residual "
        f"{best.relative_residual:.3e} > {tol:.1e}", best)


def solve_monkeypox(A, t, Y, config=DEFAULT, allow_fallback=True):
    """``A* X A + t A X A = Y``.

    The left-hand side factors as ``(A* + tA) X A``, so with both factors
    invertible ``X = (A* + tA)^-1 Y A^-1``; for ``A = I`` this is
    ``Y / (t + 1)``. If a factor is singular the Kronecker system is solved
    in the least-squares sense and accepted only when consistent, returning
    the minimum-norm solution (``allow_fallback=False`` raises instead).
    """
    eq = Monkeypox(A, t, Y)
    singular = []
    Z = X = None
    try:
        Z = solve_linear(eq.left_factor, eq.Y, config)
    except SingularMatrix:
        singular.append("A* + tA")
    try:
        X = solve_linear(eq.A.T, (eq.Y if Z is None else Z).T, config).T
    except SingularMatrix:
        singular.append("A")
    if singular:
        factor = " and ".join(singular)
        if not allow_fallback:
            raise SingularMatrix(f"{factor} singular to rank_tol", factor=factor)
        return _monkeypox_least_squares(eq, factor, config)
    return _report(eq, X, Method.FACTORED, None, rank_deficient=False)


def _monkeypox_least_squares(eq, factor, config):
    n = eq.shape[0]
    K = eq.kron_operator()
    x, _, rank, _ = np.linalg.lstsq(K, vec(eq.Y), rcond=config.null_tol)
    X = unvec(x, n, n)
    report = _report(eq, X, Method.DIRECT, None, rank_deficient=True,
                     singular_factor=factor, rank=int(rank), unknowns=n * n)
    if report.residual_fro > config.sim_tol * report.scale:
        raise InconsistentSystem(
            f"{factor} is singular and no X satisfies the equation "
            f"(least-squares relative residual {report.relative_residual:.3e})")
    return report


_METHODS = {
    "sylvester": ("direct", "contour", "exp_integral", "power_series"),
    "pencil": ("direct", "contour"),
    "stein": ("direct", "stein", "contour"),
    "monkeypox": ("direct", "factored"),
}

DIRECT_LIMIT = 4096


def choose_method(eq, config=DEFAULT):
    """Deterministic ``auto`` rule: Kronecker if ``n m <= 4096``, else by geometry."""
    n, m = eq.shape
    if isinstance(eq, Monkeypox):
        return "factored"
    if n * m <= DIRECT_LIMIT:
        return "direct"
    if isinstance(eq, Stein):
        return "stein"
    if isinstance(eq, Pencil):
        return "contour"
    sep = spectral_separation(eq.A, eq.B, config)
    try:
        auto_contour(sep, config)
        return "contour"
    except NoSeparatingCircle:
        pass
    if sep.halfplane_margin is not None and sep.halfplane_margin > 0:
        return "exp_integral"
    if sep.annulus_ratio is not None and sep.annulus_ratio < 1:
        return "power_series"
    raise SpectraNotDisjoint("no solver applies: spectra admit no supported separation")


def solve(eq, method="auto", config=DEFAULT, contour=None, tol=None):
    """Dispatch an equation object to one of the solvers by method name."""
    method = Method(method).value if method != "auto" else choose_method(eq, config)
    if method not in _METHODS[eq.kind]:
        raise SylvkitError(f"method {method!r} does not apply to a {eq.kind} equation")
    if method == "direct":
        return solve_direct(eq, config)
    if isinstance(eq, Sylvester):
        if method == "contour":
            return solve_sylvester_contour(eq.A, eq.B, eq.C, contour, config, tol)
        if method == "exp_integral":
            return solve_sylvester_exp_integral(eq.A, eq.B, eq.C, tol, config)
        return solve_sylvester_power_series(eq.A, eq.B, eq.C, tol, config)
    if isinstance(eq, Pencil):
        return solve_pencil_contour(eq.A, eq.B, eq.C, eq.D, eq.E, contour, config, tol)
    if isinstance(eq, Stein):
        if method == "stein":
            return solve_stein_series(eq.T1, eq.T2, eq.Y, tol, config)
        p = eq.as_pencil()
        report = solve_pencil_contour(p.A, p.B, p.C, p.D, p.E, contour, config, tol)
        report.residual_fro = eq.residual(report.X)
        report.scale = eq.scale(report.X)
        return report
    return solve_monkeypox(eq.A, eq.t, eq.Y, config)
