"""
Stein series and the Monkeypox equation
=======================================

T1 X T2 - X = Y is summed as a Neumann series when the spectral radii
multiply below 1. (A* + t A) X A = Y factors into two linear solves.
"""
import numpy as np

from sylvkit import Monkeypox, Stein, solve, solve_monkeypox, solve_stein_series
from sylvkit.errors import SpectralRadiusTooLarge
from sylvkit.sampling import complex_gaussian, random_contraction

rng = np.random.default_rng(4)

# Scalar check: 0.25 x - x = 1 gives x = -4/3.
print("scalar Stein:", solve_stein_series([[0.5]], [[0.5]], [[1.0]]).X[0, 0].real)

# Random contractions: the series stops once its tail bound is small enough.
for rho in (0.3, 0.6, 0.9):
    T1, T2 = random_contraction(rng, 4, rho), random_contraction(rng, 3, rho)
    Y = complex_gaussian(rng, (4, 3))
    r = solve_stein_series(T1, T2, Y)
    X_ref = solve(Stein(T1, T2, Y), "direct").X
    err = np.linalg.norm(r.X - X_ref) / np.linalg.norm(X_ref)
    print(f"rho {rho}: {r.work['terms']:4d} terms, decay ratio {r.work['decay_ratio']:.3f}, "
          f"error {err:.1e}")

# Past the unit circle the series diverges and the solver refuses.
try:
    solve_stein_series([[1.1]], [[1.1]], [[1.0]])
except SpectralRadiusTooLarge as exc:
    print("rho 1.1:", exc)

# Monkeypox with A = I collapses to X = Y / (t + 1).
Y = complex_gaussian(rng, (3, 3))
for t in (0.5, 1.0, 3.0):
    X = solve_monkeypox(np.eye(3), t, Y).X
    print(f"A = I, t = {t}: max |X - Y/(t+1)| = {np.abs(X - Y / (t + 1)).max():.1e}")

# A general invertible A, and a singular one handled by least squares.
A = complex_gaussian(rng, (3, 3)) + 2 * np.eye(3)
r = solve_monkeypox(A, 2.0, Y)
print("\nrandom A: relative residual", f"{r.residual_fro / Monkeypox(A, 2.0, r.X).scale(r.X):.1e}")
S = np.array([[0.0, 1.0], [0.0, 0.0]])
r = solve_monkeypox(S, 1.0, np.array([[0.0, 1.0], [0.0, 2.0]]))
print("singular A: fallback", r.method.value, " singular factor", repr(r.work["singular_factor"]),
      " residual", r.residual_fro)
