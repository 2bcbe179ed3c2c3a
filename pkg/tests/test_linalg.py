import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohdetect import linalg
from cohdetect.errors import DimMismatch, InvalidPermutation, NoConvergence, NonHermitian
from cohdetect.linalg import (frobenius_norm_sq, hermitian_eig, kron, mat_trace_power,
                              partial_transpose, permute_subsystems, trace,
                              trace_norm_hermitian)
from cohdetect.states import example1, max_entangled, random_density, random_unitary, x_state
from cohdetect.witness import example2_witnesses
from oracles import partial_transpose_by_entries, random_hermitian


def ket(bits):
    v = np.zeros(2 ** len(bits))
    v[int(bits, 2)] = 1
    return v


# -- hermitian_eig ------------------------------------------------------------

def test_eig_diagonal():
    np.testing.assert_allclose(hermitian_eig(np.diag([0.7, 0.3])).eigenvalues, [0.3, 0.7])


def test_eig_pauli_x_half():
    np.testing.assert_allclose(hermitian_eig([[0, 0.5], [0.5, 0]]).eigenvalues,
                               [-0.5, 0.5], atol=1e-15)


def test_eig_x_state():
    # blocks {|00>,|11>}: [[1,1],[1,1]]/4 -> {0, 1/2}; |01>, |10> -> 1/4 each
    ev = hermitian_eig(x_state(1, 0).mat).eigenvalues
    np.testing.assert_allclose(ev, [0, 0.25, 0.25, 0.5], atol=1e-15)


def test_eig_sorted_and_unitary(rng):
    a = random_hermitian(10, rng)
    w, v = hermitian_eig(a)
    assert np.all(np.diff(w) >= 0)
    assert np.linalg.norm(v.conj().T @ v - np.eye(10)) < 1e-12
    assert np.linalg.norm((v * w) @ v.conj().T - a) <= 1e-12 * np.linalg.norm(a)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        hermitian_eig([[0, 1], [0, 0]])


def test_eig_symmetrises_within_gate():
    a = np.array([[1.0, 0.5], [0.5 + 1e-13, 2.0]])
    w = hermitian_eig(a).eigenvalues
    np.testing.assert_allclose(w, np.linalg.eigvalsh((a + a.T) / 2), atol=1e-14)


def test_eig_iteration_cap(monkeypatch, rng):
    monkeypatch.setattr(linalg, "MAX_SWEEPS", 0)
    with pytest.raises(NoConvergence):
        hermitian_eig(random_hermitian(3, rng))


def test_constructors_reject_nan():
    with pytest.raises(ValueError):
        linalg.as_matrix([[np.nan, 0], [0, 1]])


# -- kron ---------------------------------------------------------------------

def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_basis_bookkeeping():
    e01 = np.outer(ket("0"), ket("1"))
    e10 = np.outer(ket("1"), ket("0"))
    k = kron(e01, e10)
    assert k[1, 2] == 1 and np.count_nonzero(k) == 1


def test_kron_example2_witnesses():
    w, v = example2_witnesses()
    k = kron(w.mat, v.mat)
    assert k.shape == (16, 16)
    assert np.count_nonzero(k) == 4 and np.all(k[k != 0] == 1)


# -- partial transpose ----------------------------------------------------------

def test_pt_diagonal_fixed():
    d = np.diag(np.arange(1, 10) / 45)
    np.testing.assert_array_equal(partial_transpose(d, (3, 3)), d)


def test_pt_index_rule():
    a = np.outer(ket("00"), ket("11"))
    np.testing.assert_array_equal(partial_transpose(a, (2, 2)), np.outer(ket("01"), ket("10")))


@pytest.mark.parametrize("alpha,beta", [(0.3, 0.9), (1.0, 0.0), (0.5, 0.5)])
def test_pt_swaps_x_state_parameters(alpha, beta):
    out = partial_transpose(x_state(alpha, beta).mat, (2, 2))
    np.testing.assert_array_equal(out, x_state(beta, alpha).mat)


@pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_pt_matches_entry_oracle(rng, m, n):
    a = random_hermitian(m * n, rng)
    np.testing.assert_array_equal(partial_transpose(a, (m, n)),
                                  partial_transpose_by_entries(a, m, n))


def test_pt_on_a_is_full_transpose_of_pt_on_b(rng):
    a = random_hermitian(6, rng)
    np.testing.assert_array_equal(partial_transpose(a, (2, 3), 0),
                                  partial_transpose(a, (2, 3), 1).T)


def test_pt_dim_mismatch():
    with pytest.raises(DimMismatch):
        partial_transpose(np.eye(6), (2, 2))
    with pytest.raises(DimMismatch):
        partial_transpose(np.eye(4), (2, 2), 2)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(2, 3), n=st.integers(2, 3))
def test_pt_involution_and_trace(seed, m, n):
    a = random_hermitian(m * n, np.random.default_rng(seed))
    once = partial_transpose(a, (m, n))
    np.testing.assert_array_equal(partial_transpose(once, (m, n)), a)
    assert abs(np.trace(once) - np.trace(a)) < 1e-14


# -- permute_subsystems ---------------------------------------------------------

def test_permute_identity(rng):
    a = random_hermitian(12, rng)
    np.testing.assert_array_equal(permute_subsystems(a, (2, 3, 2), [0, 1, 2]), a)


def test_permute_swap_product():
    a = np.diag([1.0, 0.0])
    b = np.diag([0.0, 1.0])
    np.testing.assert_array_equal(permute_subsystems(np.kron(a, b), (2, 2), [1, 0]),
                                  np.kron(b, a))


def test_permute_rejects_non_bijection():
    with pytest.raises(InvalidPermutation):
        permute_subsystems(np.eye(4), (2, 2), [0, 0])


def test_permute_spectrum_preserved(rng):
    a = random_hermitian(12, rng)
    p = permute_subsystems(a, (2, 3, 2), [2, 0, 1])
    np.testing.assert_allclose(hermitian_eig(p).eigenvalues, np.linalg.eigvalsh(a), atol=1e-12)


@pytest.mark.parametrize("alpha,beta", [(0.5, 0.5), (1.0, 0.0), (0.25, 1.0)])
def test_permute_example2_contraction(alpha, beta):
    # kron(W, V) lives on (A1, A2, B1, B2); rho_x (x) rho_x on (A1, B1, A2, B2)
    w, v = example2_witnesses()
    op = permute_subsystems(kron(w.mat, v.mat), (2, 2, 2, 2), [0, 2, 1, 3])
    rho = x_state(alpha, beta).mat
    val = np.trace(op @ np.kron(rho, rho)).real
    assert val == pytest.approx((alpha + beta) / 8, abs=1e-15)


# -- norms and traces -----------------------------------------------------------

def test_trace_norm_examples():
    assert trace_norm_hermitian(np.diag([0.5, -0.5])) == pytest.approx(1.0)
    assert trace_norm_hermitian(np.zeros((3, 3))) == 0.0


@pytest.mark.parametrize("p,c", [(0.5, 0.5), (0.7, 0.1 - 0.2j), (0.1, 0.3j)])
def test_trace_norm_qubit_offdiag(p, c):
    rho = np.array([[p, c], [np.conj(c), 1 - p]])
    sigma = np.diag([p, 1 - p])
    assert trace_norm_hermitian(rho - sigma) == pytest.approx(2 * abs(c), abs=1e-14)


def test_trace_norm_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        trace_norm_hermitian([[0, 1], [2, 0]])


def test_power_traces():
    rho = random_density(5, 1).mat
    assert mat_trace_power(rho, 1) == pytest.approx(1.0, abs=1e-14)
    assert frobenius_norm_sq(max_entangled(3).mat) == pytest.approx(1.0, abs=1e-15)
    # spectrum {1/2, 0, 1/4, 1/4}: 1/8 + 2/64
    assert mat_trace_power(example1(1, 0).mat, 3) == pytest.approx(5 / 32, abs=1e-15)
    assert trace(np.diag([1, 2j])) == 1 + 2j


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
def test_power_sums_match_trace_and_frobenius(seed, n):
    a = random_hermitian(n, np.random.default_rng(seed))
    w = hermitian_eig(a).eigenvalues
    assert abs(w.sum() - np.trace(a).real) < 1e-10
    assert abs((w**2).sum() - frobenius_norm_sq(a)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), m=st.integers(2, 3), n=st.integers(2, 3))
def test_pt_spectrum_basis_independent(seed, m, n):
    rho = random_density(m * n, seed).mat
    u = np.kron(np.eye(m), random_unitary(n, seed + 1))
    rotated = u @ rho @ u.conj().T
    s1 = hermitian_eig(partial_transpose(rotated, (m, n))).eigenvalues
    s2 = hermitian_eig(partial_transpose(rho, (m, n))).eigenvalues
    np.testing.assert_allclose(s1, s2, atol=1e-9)
