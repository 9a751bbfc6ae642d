"""Solvers and checks for the operator equations AX - XB = C and relatives.

Modules
-------
core       dense complex linear algebra (eigenvalues, exp, Kronecker, Schatten norms)
equations  Sylvester, pencil, Stein and Monkeypox equations with Kronecker oracles
solvers    contour-integral, series and exponential-integral solution formulas
roth       Roth similarity, Fuglede-Putnam checking, operator classes
approx     commutator approximation in Frobenius and operator norm
mmio       Matrix Market reader/writer
cli        batch command line front end
"""
__version__ = "0.1.0"

from .config import DEFAULT, Config
from .core import (
    Spectrum,
    adjoint,
    eigenvalues,
    hermitian_power,
    kron,
    matrix_exp,
    schatten_norm,
    solve_linear,
    unvec,
    vec,
)
from .equations import Monkeypox, Pencil, Stein, Sylvester
from .solvers import (
    ContourSpec,
    Method,
    SeparationReport,
    SolveReport,
    solve,
    solve_direct,
    solve_monkeypox,
    solve_pencil_contour,
    solve_pencil_direct,
    solve_stein_series,
    solve_sylvester_contour,
    solve_sylvester_direct,
    solve_sylvester_exp_integral,
    solve_sylvester_power_series,
    spectral_separation,
)
from .roth import (
    BlockTransform,
    ClassQuery,
    check_fp_pair,
    check_operator_class,
    is_solvable,
    roth_similarity_from_solution,
    solve_from_similarity,
)
from .approx import (
    anderson_margin,
    best_commutator_approx_frobenius,
    distance_to_identity_estimate,
    williams_margin,
)
