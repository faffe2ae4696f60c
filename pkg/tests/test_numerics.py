import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from acc_ybe import catalog, numerics
from acc_ybe.acc import swap_operator
from acc_ybe.errors import (
    DimensionMismatch,
    MinimalPolynomialMismatch,
    NonIntegerMultiplicity,
    SizeOverflow,
)

seeds = st.integers(0, 2**32 - 1)


def _cmat(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def _loop_matmul(a, b):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            s = 0j
            for k in range(n):
                s += a[i, k] * b[k, j]
            out[i, j] = s
    return out


def _loop_kron(a, b):
    na, nb = a.shape[0], b.shape[0]
    out = np.zeros((na * nb, na * nb), dtype=complex)
    for i in range(na):
        for j in range(na):
            for k in range(nb):
                for l in range(nb):
                    out[i * nb + k, j * nb + l] = a[i, j] * b[k, l]
    return out


# --- mat_mul / kron ---------------------------------------------------------

@given(seeds, st.sampled_from([1, 3, 9]))
def test_mat_mul_matches_triple_loop(seed, n):
    rng = np.random.default_rng(seed)
    a, b = _cmat(rng, n), _cmat(rng, n)
    ref = _loop_matmul(a, b)
    assert numerics.max_abs(numerics.mat_mul(a, b) - ref) <= 1e-12 * max(1.0, numerics.max_abs(ref))


def test_mat_mul_rejects_mismatched_sides():
    with pytest.raises(DimensionMismatch):
        numerics.mat_mul(np.eye(3), np.eye(9))
    with pytest.raises(DimensionMismatch):
        numerics.as_matrix(np.ones((3, 2)))


def test_as_matrix_rejects_nan():
    m = np.eye(3)
    m[0, 1] = np.nan
    with pytest.raises(ValueError):
        numerics.as_matrix(m)


def test_swap_squares_to_identity():
    p = swap_operator()
    assert np.array_equal(numerics.mat_mul(p, p), numerics.identity(9))


@given(seeds)
def test_kron_index_formula(seed):
    rng = np.random.default_rng(seed)
    a, b = _cmat(rng, 3), _cmat(rng, 3)
    ref = _loop_kron(a, b)
    # complex products may differ in the last bit (fused multiply-add)
    assert numerics.max_abs(numerics.kron(a, b) - ref) <= 4e-16 * numerics.max_abs(ref)


def test_kron_identities():
    assert np.array_equal(numerics.kron(numerics.identity(3), numerics.identity(3)), numerics.identity(9))
    m = _cmat(np.random.default_rng(0), 9)
    assert np.array_equal(numerics.kron(m, numerics.identity(1)), m)
    assert np.array_equal(numerics.kron(numerics.identity(1), m), m)


def test_kron_overflow_is_detected_before_allocation():
    with pytest.raises(SizeOverflow):
        numerics.kron(numerics.identity(729), numerics.identity(3))
    assert numerics.kron(numerics.identity(243), numerics.identity(3)).shape == (729, 729)


@given(seeds)
def test_kron_mixed_product(seed):
    rng = np.random.default_rng(seed)
    a, b, c, d = (_cmat(rng, 3) for _ in range(4))
    lhs = numerics.kron(a, b) @ numerics.kron(c, d)
    rhs = numerics.kron(a @ c, b @ d)
    assert numerics.max_abs(lhs - rhs) <= 1e-12 * max(1.0, numerics.max_abs(rhs))


@given(seeds)
def test_kron_trace_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    a, b = _cmat(rng, 3), _cmat(rng, 9)
    t = np.trace(numerics.kron(a, b))
    assert abs(t - np.trace(a) * np.trace(b)) <= 1e-12 * max(1.0, abs(t))


# --- rank -----------------------------------------------------------------

def test_rank_examples():
    assert numerics.rank(np.zeros((9, 9))) == 0
    assert numerics.rank(numerics.identity(9)) == 9
    p = swap_operator()
    assert numerics.rank(p - numerics.identity(9)) == 3


def test_rank_of_case1_minus_identity_is_one():
    inst = catalog.FamilyInstance("Case1", {"a": -1, "x1": 1, "x3": 1}, {"branch": "plus"})
    m = catalog.instantiate(inst).tensor()
    assert numerics.rank(m - numerics.identity(9)) == 1


def test_rank_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        numerics.rank(np.eye(3), tol=0)


@given(seeds, st.integers(0, 9))
def test_rank_matches_svd_on_constructed_low_rank(seed, r):
    rng = np.random.default_rng(seed)
    u = rng.normal(size=(9, r)) + 1j * rng.normal(size=(9, r))
    v = rng.normal(size=(r, 9)) + 1j * rng.normal(size=(r, 9))
    m = u @ v
    assert numerics.rank(m) == r
    if r:
        assert np.linalg.matrix_rank(m) == r


@given(seeds, st.integers(1, 8))
def test_rank_invariant_under_invertible_multiplication(seed, r):
    rng = np.random.default_rng(seed)
    m = (rng.normal(size=(9, r)) @ rng.normal(size=(r, 9))).astype(complex)
    g = _cmat(rng, 9)
    h = _cmat(rng, 9)
    assert numerics.rank(g @ m @ h) == numerics.rank(m) == r


# --- spectra from traces ----------------------------------------------------

def test_multiplicities_identity_and_swap():
    assert numerics.multiplicities_from_traces(numerics.identity(9), [1]) == {1: 9}
    assert numerics.multiplicities_from_traces(swap_operator(), [1, -1]) == {1: 6, -1: 3}


def test_multiplicities_case3_1_1():
    inst = catalog.FamilyInstance("Case3_1_1", {"a": 2, "c": 1, "x4": 1}, {})
    m = catalog.instantiate(inst).tensor()
    assert numerics.multiplicities_from_traces(m, [1, -4, 8]) == {1: 5, -4: 3, 8: 1}


def test_wrong_spectrum_is_rejected():
    with pytest.raises(MinimalPolynomialMismatch):
        numerics.multiplicities_from_traces(swap_operator(), [1, 2])


def test_unseparated_candidates_are_rejected():
    with pytest.raises(ValueError):
        numerics.multiplicities_from_traces(numerics.identity(9), [1, 1 + 1e-12])


def test_non_integer_solution_is_rejected():
    # 2.5 is not an eigenvalue, so the certificate cannot vanish
    m = np.diag([1.0, 2.0, 3.0]).astype(complex)
    with pytest.raises(MinimalPolynomialMismatch):
        numerics.multiplicities_from_traces(m, [1, 2.5, 3])
    # skipping the certificate leaves a non-integer trace solve
    with pytest.raises(NonIntegerMultiplicity):
        numerics.multiplicities_from_traces(m, [1, 2.5, 3], certificate="characteristic")


def test_jordan_block_needs_characteristic_certificate():
    m = np.array([[2, 1, 0], [0, 2, 0], [0, 0, 5]], dtype=complex)
    with pytest.raises(MinimalPolynomialMismatch):
        numerics.multiplicities_from_traces(m, [2, 5])
    assert numerics.multiplicities_from_traces(m, [2, 5], certificate="characteristic") == {2: 2, 5: 1}


def test_spectrum_report_flags_non_semisimple():
    m = np.array([[2, 1, 0], [0, 2, 0], [0, 0, 5]], dtype=complex)
    rep = numerics.spectrum_report(m, [2, 5])
    assert not rep.ok and not rep.semisimple
    assert rep.multiplicities() == {2: 2, 5: 1}
    assert rep.characteristic_residual <= 1e-12


@given(seeds)
def test_multiplicities_recover_diagonalizable_spectrum(seed):
    rng = np.random.default_rng(seed)
    eig = [1.0, -0.5 + 0.7j, 2.0j]
    mults = [int(k) for k in rng.multinomial(6, [1 / 3] * 3) + 1]
    diag = np.concatenate([[e] * k for e, k in zip(eig, mults)])
    g = _cmat(rng, 9) + 3 * np.eye(9)
    m = g @ np.diag(diag) @ np.linalg.inv(g)
    out = numerics.multiplicities_from_traces(m, eig, tol=1e-8)
    assert [out[e] for e in eig] == mults


@given(seeds)
def test_minimal_polynomial_residual_vanishes_on_projector_spectrum(seed):
    rng = np.random.default_rng(seed)
    g = _cmat(rng, 4) + 3 * np.eye(4)
    m = g @ np.diag([3, 3, -1, -1]).astype(complex) @ np.linalg.inv(g)
    res, scale = numerics.minimal_polynomial_residual(m, [3, -1])
    assert res <= 1e-9 * scale
