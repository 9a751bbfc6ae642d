"""
Four ways to solve A X - X B = C
================================

The same equation solved by the Kronecker system, a contour integral of
resolvents, an exponential integral and a power series. Each formula needs
its own separation of the spectra.
"""
import numpy as np

from sylvkit import (
    Sylvester,
    solve,
    solve_sylvester_contour,
    solve_sylvester_direct,
    solve_sylvester_exp_integral,
    solve_sylvester_power_series,
    spectral_separation,
)
from sylvkit.sampling import separated_sylvester

rng = np.random.default_rng(0)

# A random instance: sigma(A) in the unit disc, sigma(B) a few units away.
A, B, C = separated_sylvester(rng, 4, 3)
sep = spectral_separation(A, B)
print("eigenvalue gap      ", round(sep.min_gap, 3))
print("half-plane margin   ", round(sep.halfplane_margin, 3))
print("annulus ratio       ", sep.annulus_ratio and round(sep.annulus_ratio, 3))

# The reference answer: solve (I (x) A - B^T (x) I) vec X = vec C.
X_ref = solve_sylvester_direct(A, B, C).X

# Contour quadrature around sigma(A). Nodes double until the residual settles.
r = solve_sylvester_contour(A, B, C)
print("\ncontour nodes used  ", r.work["nodes"])
for nodes, res in r.work["residual_history"]:
    print(f"  {nodes:5d} nodes  residual {res:.2e}")
print("error vs Kronecker  ", f"{np.linalg.norm(r.X - X_ref) / np.linalg.norm(X_ref):.2e}")

# Shift the spectra so sigma(A) is right of sigma(B): the exp integral applies.
A2, B2 = A + 2 * np.eye(4), B - 6 * np.eye(3)
r = solve_sylvester_exp_integral(A2, B2, C)
X2 = solve_sylvester_direct(A2, B2, C).X
print("\nexp integral panels ", r.work["panels"], " horizon", round(r.work["horizon"], 2))
print("error vs Kronecker  ", f"{np.linalg.norm(r.X - X2) / np.linalg.norm(X2):.2e}")

# Shrink B inside a disc that sigma(A) avoids: the power series applies.
A3, B3 = A + 5 * np.eye(4), 0.2 * B
r = solve_sylvester_power_series(A3, B3, C)
X3 = solve_sylvester_direct(A3, B3, C).X
print("\npower series terms  ", r.work["terms"])
print("error vs Kronecker  ", f"{np.linalg.norm(r.X - X3) / np.linalg.norm(X3):.2e}")

# The dispatcher picks a method from the problem size and geometry.
print("\nauto method         ", solve(Sylvester(A, B, C)).method.value)
