import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sylvkit.config import DEFAULT
from sylvkit.core import (
    adjoint,
    as_matrix,
    eigenvalues,
    hermitian_power,
    kron,
    match_spectra,
    matrix_exp,
    pencil_eigenvalues,
    random_unitary,
    schatten_norm,
    singular_values,
    solve_linear,
    unvec,
    vec,
)
from sylvkit.errors import (
    DimensionMismatch,
    InvalidIndex,
    NonFiniteEntries,
    NotHermitianPSD,
    SingularMatrix,
    SingularPencil,
)
from sylvkit.sampling import complex_gaussian, random_normal

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_as_matrix_rejects_nonfinite_and_bad_shapes():
    with pytest.raises(NonFiniteEntries):
        as_matrix([[1.0, np.nan]])
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros((2, 2, 2)))
    with pytest.raises(DimensionMismatch):
        as_matrix(np.zeros((2, 3)), square=True)
    assert as_matrix(3.0).shape == (1, 1)


def test_adjoint_examples(rng):
    assert adjoint([[1j]])[0, 0] == -1j
    S = np.array([[1.0, 2.0], [2.0, 5.0]])
    np.testing.assert_array_equal(adjoint(S), S)
    M = complex_gaussian(rng, (3, 4))
    assert adjoint(M).shape == (4, 3)
    np.testing.assert_array_equal(adjoint(adjoint(M)), M)


def test_solve_linear_examples(rng):
    B = complex_gaussian(rng, (3, 2))
    np.testing.assert_array_equal(solve_linear(np.eye(3), B), B)
    np.testing.assert_allclose(solve_linear(np.diag([2.0, 4.0]), np.eye(2)),
                               np.diag([0.5, 0.25]))
    A = complex_gaussian(rng, (5, 5)) + 5 * np.eye(5)
    B = complex_gaussian(rng, (5, 3))
    X = solve_linear(A, B)
    assert np.linalg.norm(A @ X - B) <= 1e-13 * np.linalg.norm(A) * np.linalg.norm(X)


def test_solve_linear_singular():
    with pytest.raises(SingularMatrix):
        solve_linear([[1.0, 2.0], [2.0, 4.0]], np.eye(2))
    with pytest.raises(SingularMatrix):
        solve_linear(np.zeros((2, 2)), np.eye(2))
    with pytest.raises(DimensionMismatch):
        solve_linear(np.eye(2), np.eye(3))


def test_eigenvalue_examples():
    w = eigenvalues(np.diag([1, 2 + 1j])).eigenvalues
    assert match_spectra(w, [1, 2 + 1j]) < 1e-14
    w = eigenvalues([[0.0, 1.0], [0.0, 0.0]]).eigenvalues
    np.testing.assert_allclose(w, [0, 0], atol=1e-15)
    # companion matrix of z^2 - 3z + 2 = (z - 1)(z - 2)
    spec = eigenvalues([[3.0, -2.0], [1.0, 0.0]])
    assert match_spectra(spec.eigenvalues, [1, 2]) < 1e-14
    assert spec.backward_error <= DEFAULT.eig_tol
    assert len(spec) == 2


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 8))
def test_eigenvalues_unitary_invariant(seed, n):
    rng = np.random.default_rng(seed)
    M = complex_gaussian(rng, (n, n))
    U = random_unitary(n, rng)
    a = eigenvalues(M).eigenvalues
    b = eigenvalues(U @ M @ U.conj().T).eigenvalues
    assert match_spectra(a, b) <= DEFAULT.eig_match_tol


def test_pencil_eigenvalues():
    # l*C - A singular at l = A/C for scalars; infinite when C = 0
    lam = pencil_eigenvalues(np.diag([2.0, 6.0]), np.diag([1.0, 3.0])).eigenvalues
    assert match_spectra(lam, [2, 2]) < 1e-14
    lam = pencil_eigenvalues(np.diag([1.0, 1.0]), np.diag([1.0, 0.0])).eigenvalues
    assert np.isinf(lam).sum() == 1 and np.isclose(lam[np.isfinite(lam)][0], 1)
    with pytest.raises(SingularPencil):
        pencil_eigenvalues(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]))


def test_matrix_exp_examples():
    np.testing.assert_array_equal(matrix_exp(np.zeros((3, 3))), np.eye(3))
    np.testing.assert_allclose(matrix_exp(np.diag([1.0, -2.0 + 1j])),
                               np.diag(np.exp([1.0, -2.0 + 1j])), rtol=1e-14)
    N = np.array([[0.0, 1.0], [0.0, 0.0]])
    np.testing.assert_allclose(matrix_exp(N), np.eye(2) + N, atol=1e-16)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 8))
def test_matrix_exp_inverse(seed, n):
    rng = np.random.default_rng(seed)
    M = complex_gaussian(rng, (n, n))
    M *= 2 / np.linalg.norm(M, 2)
    E = matrix_exp(M) @ matrix_exp(-M)
    cond = np.linalg.cond(matrix_exp(M))
    assert np.linalg.norm(E - np.eye(n)) <= DEFAULT.exp_tol * 10 * cond * n


def test_kron_vec_examples(rng):
    M = complex_gaussian(rng, (3, 3))
    np.testing.assert_array_equal(kron(np.eye(2), M),
                                  np.block([[M, np.zeros((3, 3))], [np.zeros((3, 3)), M]]))
    np.testing.assert_array_equal(vec([[1, 3], [2, 4]]), [1, 2, 3, 4])
    A, X, B = (complex_gaussian(rng, (2, 2)) for _ in range(3))
    assert np.linalg.norm(vec(A @ X @ B) - kron(B.T, A) @ vec(X)) <= 1e-12
    with pytest.raises(DimensionMismatch):
        unvec(np.arange(5), 2, 3)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8), st.integers(1, 8))
def test_vec_roundtrip_exact(seed, rows, cols):
    M = complex_gaussian(np.random.default_rng(seed), (rows, cols))
    np.testing.assert_array_equal(unvec(vec(M), rows, cols), M)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
def test_kron_identity(seed, n, k, m):
    rng = np.random.default_rng(seed)
    A = complex_gaussian(rng, (n, k))
    X = complex_gaussian(rng, (k, k))
    B = complex_gaussian(rng, (k, m))
    scale = np.linalg.norm(A) * np.linalg.norm(X) * np.linalg.norm(B)
    assert np.linalg.norm(vec(A @ X @ B) - kron(B.T, A) @ vec(X)) <= 1e-12 * scale


def test_schatten_examples(rng):
    assert np.isclose(schatten_norm(np.eye(5), 2), np.sqrt(5), rtol=1e-15)
    assert schatten_norm(np.diag([3.0, 4.0]), np.inf) == 4.0
    u, v = complex_gaussian(rng, (4, 1)), complex_gaussian(rng, (3, 1))
    expected = np.linalg.norm(u) * np.linalg.norm(v)
    for p in (1, 1.5, 2, 7, np.inf):
        assert np.isclose(schatten_norm(u @ v.conj().T, p), expected, rtol=1e-7)
    with pytest.raises(InvalidIndex):
        schatten_norm(np.eye(2), 0.5)
    with pytest.raises(InvalidIndex):
        schatten_norm(np.eye(2), float("nan"))


def test_schatten_p2_is_frobenius_and_singular_values_match(rng):
    M = complex_gaussian(rng, (5, 3))
    assert np.isclose(schatten_norm(M, 2), np.linalg.norm(M), rtol=1e-12)
    np.testing.assert_allclose(singular_values(M), np.linalg.svd(M, compute_uv=False), rtol=1e-10)
    assert schatten_norm(np.zeros((2, 2)), 3) == 0.0
    # large p must not overflow
    assert np.isfinite(schatten_norm(1e3 * M, 400))


@settings(max_examples=50, deadline=None)
@given(seeds, st.floats(1.0, 50.0))
def test_schatten_monotone_in_p(seed, p):
    M = complex_gaussian(np.random.default_rng(seed), (4, 4))
    lo, mid, hi = schatten_norm(M, np.inf), schatten_norm(M, p), schatten_norm(M, 1)
    assert lo <= mid * (1 + 1e-12) and mid <= hi * (1 + 1e-12)


def test_hermitian_power_examples(rng):
    np.testing.assert_allclose(hermitian_power(np.eye(3), 0.5), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(hermitian_power(np.diag([4.0, 9.0]), 0.5), np.diag([2.0, 3.0]),
                               rtol=1e-14)
    G = complex_gaussian(rng, (4, 4))
    M = G @ G.conj().T
    np.testing.assert_allclose(hermitian_power(M, 2), M @ M, rtol=1e-11, atol=1e-11)
    # rank-deficient PSD: tiny negative rounding is clamped
    v = complex_gaussian(rng, (4, 1))
    assert np.all(np.isfinite(hermitian_power(v @ v.conj().T, 0.3)))


def test_hermitian_power_rejects():
    with pytest.raises(NotHermitianPSD):
        hermitian_power([[0.0, 1.0], [0.0, 0.0]], 0.5)
    with pytest.raises(NotHermitianPSD):
        hermitian_power(np.diag([1.0, -1.0]), 0.5)


def test_random_unitary(rng):
    U = random_unitary(6, rng)
    assert np.linalg.norm(U.conj().T @ U - np.eye(6)) < 1e-13
    U2 = random_unitary(6, np.random.default_rng(20240601))
    U1 = random_unitary(6, np.random.default_rng(20240601))
    np.testing.assert_array_equal(U1, U2)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 8))
def test_commutator_trace_zero(seed, n):
    rng = np.random.default_rng(seed)
    A, X = complex_gaussian(rng, (n, n)), complex_gaussian(rng, (n, n))
    scale = np.linalg.norm(A) * np.linalg.norm(X)
    assert abs(np.trace(A @ X - X @ A)) <= 1e-10 * scale


def test_normal_matrix_eigenvalues(rng):
    lam = complex_gaussian(rng, 5)
    assert match_spectra(eigenvalues(random_normal(rng, 5, lam)).eigenvalues, lam) < 1e-12
