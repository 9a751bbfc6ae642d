"""
How close can a commutator get?
===============================

Approximating B by A X - X C in the Frobenius norm is a least-squares
problem with a checkable optimality condition. In operator norm we can only
search, and the identity stays at distance at least 1.
"""
import numpy as np

from sylvkit import (
    anderson_margin,
    best_commutator_approx_frobenius,
    distance_to_identity_estimate,
    williams_margin,
)
from sylvkit.sampling import complex_gaussian, random_normal, with_spectrum

rng = np.random.default_rng(2)

# B commuting with a normal A is orthogonal to every A X - X A: zero is the best X.
A = random_normal(rng, 4)
B = A @ A + np.eye(4)
r = best_commutator_approx_frobenius(A, A, B)
print("B in the kernel:  residual", round(r.residual, 6), " ||B||_F", round(np.linalg.norm(B), 6))

# B built inside the range is matched exactly.
A1 = with_spectrum(rng, complex_gaussian(rng, 3))
C1 = with_spectrum(rng, complex_gaussian(rng, 3) + 5)
X0 = complex_gaussian(rng, (3, 3))
r = best_commutator_approx_frobenius(A1, C1, A1 @ X0 - X0 @ C1)
print("B in the range:   residual", f"{r.residual:.1e}", " stationarity", f"{r.stationarity:.1e}")

# Williams: ||I - (A X - X A)|| >= 1 for normal A, whatever X is.
margins = [williams_margin(A, complex_gaussian(rng, (4, 4))) for _ in range(1000)]
print("\nWilliams margin over 1000 random X: min", f"{min(margins):.3e}")

# Anderson: the same holds with B in place of I when B commutes with normal A.
D, E = np.diag([1.0, 2.0]), np.diag([3.0, 4.0])
m = [anderson_margin(D, E, complex_gaussian(rng, (2, 2))) for _ in range(200)]
print("Anderson margin over 200 random X: min", f"{min(m):.3e}")

# Distance from I to the commutators of a non-normal A. Commutators have zero
# trace, so no operator-norm value below 1 is possible.
J = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
d = distance_to_identity_estimate(J, budget=2000, rng=np.random.default_rng(3))
print("\nshift on C^3:     Frobenius distance", round(d.frobenius_exact, 6),
      "(sqrt 3 =", round(np.sqrt(3), 6), ")")
print("                  operator-norm search", round(d.operator_upper, 6),
      f"after {d.accepted} improvements")
