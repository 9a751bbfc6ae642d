"""
Roth similarity and the Fuglede-Putnam property
===============================================

A X - X B = C is solvable exactly when [[A, C], [0, B]] is similar to
blockdiag(A, B). Going the other way, a similarity transform hands back a
solution, provided the pair passes the Fuglede-Putnam check.
"""
import numpy as np

from sylvkit import (
    ClassQuery,
    check_fp_pair,
    check_operator_class,
    is_solvable,
    roth_similarity_from_solution,
    solve_from_similarity,
    solve_sylvester_direct,
)
from sylvkit.sampling import complex_gaussian, random_normal, with_spectrum

rng = np.random.default_rng(1)

# Fuglede-Putnam: does A C = C B force A* C = C B*?
A = random_normal(rng, 4)
r = check_fp_pair(A, A)
print("normal A, A:        dim", r.intertwiner_dim, " holds", r.fp_holds,
      f" worst {r.worst_violation:.1e}")

J = np.array([[0.0, 1.0], [0.0, 0.0]])
r = check_fp_pair(J, J)
print("nilpotent J, J:     dim", r.intertwiner_dim, " holds", r.fp_holds,
      f" worst {r.worst_violation:.3f}  (C = J is the witness)")

r = check_fp_pair(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
print("disjoint spectra:   dim", r.intertwiner_dim, " vacuous", r.vacuous)

# Roth: a solution X gives W = [[I, X], [0, I]] with W^-1 blockdiag(N, A) W = [[N, C], [0, A]].
N = random_normal(rng, 3)
A = with_spectrum(rng, complex_gaussian(rng, 3) + 4)
C = complex_gaussian(rng, (3, 3))
X0 = solve_sylvester_direct(N, A, C).X
W = roth_similarity_from_solution(N, A, C, X0)

# Any invertible Z commuting with blockdiag(N, A) gives another valid transform.
Z = np.zeros((6, 6), complex)
Z[:3, :3], Z[3:, 3:] = N + 5 * np.eye(3), A @ A + np.eye(3)
rec = solve_from_similarity(N, A, C, Z @ W.matrix)
print("\nrecovered from Z W:  error", f"{np.linalg.norm(rec.X - X0) / np.linalg.norm(X0):.1e}",
      " min eig(S*S + Q*Q)", round(rec.work["gram_min_eig"], 3))

# Solvability in the degenerate case: commutators have zero trace.
print("\nNX - XN = I:        ", is_solvable(N, N, np.eye(3)).status.value)
print("NX - XN = NC - CN:  ", is_solvable(N, N, N @ C - C @ N).status.value)

# Operator classes: J is not hyponormal, but J^2 = 0 makes it 2-quasihyponormal.
for kind, k in (("hyponormal", None), ("quasihyponormal", None), ("k_quasihyponormal", 2)):
    res = check_operator_class(J, ClassQuery(kind, k=k))
    print(f"J {kind:<18} k={k}: holds {res.holds}  margin {res.margin:+.3f}")
