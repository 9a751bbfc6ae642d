"""Numerical tolerances and iteration budgets.

A :class:`Config` is immutable; derive variants with :meth:`Config.replace`.
Every public routine takes ``config=`` and falls back to :data:`DEFAULT`.
"""
from dataclasses import dataclass, fields, replace as _replace


@dataclass(frozen=True)
class Config:
    # matrix core
    eig_tol: float = 1e-10
    rank_tol: float = 1e-12
    psd_tol: float = 1e-9
    exp_tol: float = 1e-12
    eig_match_tol: float = 1e-8

    # spectral separation
    sep_tol: float = 1e-8

    # contour quadrature (relative substitution residual)
    contour_tol: float = 1e-11
    contour_start_nodes: int = 32
    max_nodes: int = 4096

    # series solvers
    series_margin: float = 1e-6
    series_tol: float = 1e-13
    series_max_terms: int = 200_000
    ratio_cap: float = 0.999

    # exponential integral
    exp_integral_tol: float = 1e-10
    exp_safety: float = 2.0
    gl_order: int = 16
    max_panels: int = 4096

    # Fuglede-Putnam / similarity
    null_tol: float = 1e-9
    fp_tol: float = 1e-8
    sim_tol: float = 1e-8

    def replace(self, **changes):
        return _replace(self, **changes)

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT = Config()
