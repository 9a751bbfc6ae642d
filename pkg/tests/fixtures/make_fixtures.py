"""Regenerate the matrix fixtures used by the command line tests.

Run from this directory: ``python3 make_fixtures.py``. Output is fixed by the
seed, so the committed files only change if this script does.
"""
import json

import numpy as np

from sylvkit.mmio import write_matrix_market

rng = np.random.default_rng(1234)


def save(name, M):
    write_matrix_market(f"{name}.mtx", np.asarray(M, dtype=complex))


def job(name, equation, **extra):
    with open(f"{name}.json", "w") as fh:
        json.dump({"equation": equation, **extra}, fh, indent=2)
        fh.write("\n")


# Sylvester: sigma(A) near 0, sigma(B) near 4
save("syl_A", np.triu(rng.standard_normal((3, 3)) * 0.3) + np.diag([0.1, -0.2, 0.3j]))
save("syl_B", np.array([[4.0, 0.5], [0.0, 4.5]]))
save("syl_C", rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2)))
job("sylvester", {"kind": "sylvester", "A": "syl_A.mtx", "B": "syl_B.mtx", "C": "syl_C.mtx"},
    method="auto", seed=7, tolerances={"tol": 1e-8})
job("sylvester_contour",
    {"kind": "sylvester", "A": "syl_A.mtx", "B": "syl_B.mtx", "C": "syl_C.mtx"},
    method="contour", seed=7, tolerances={"tol": 1e-8})

# Stein with spectral radii 1.1 (product 1.21)
save("stein_T1", np.array([[1.1, 1.0], [0.0, 0.5]]))
save("stein_T2", np.array([[1.1]]))
save("stein_Y", np.array([[1.0], [2.0]]))
job("stein_unstable", {"kind": "stein", "T1": "stein_T1.mtx", "T2": "stein_T2.mtx",
                       "Y": "stein_Y.mtx"}, method="stein")

# Monkeypox with A = I, t = 3
save("eye3", np.eye(3))
save("mp_Y", rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
job("monkeypox", {"kind": "monkeypox", "A": "eye3.mtx", "t": 3, "Y": "mp_Y.mtx"},
    output={"solution": "out_X.mtx"})

# Fuglede-Putnam pairs
Q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
save("normal_A", Q @ np.diag([1.0, 2j, -1.0 + 1j]) @ Q.conj().T)
save("nilpotent", np.array([[0.0, 1.0], [0.0, 0.0]]))
save("diag_12", np.diag([1.0, 2.0]))
save("diag_34", np.diag([3.0, 4.0]))
