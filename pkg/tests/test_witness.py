import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohdetect.errors import (DegenerateSpectrum, DiagonalNotZero, DimMismatch,
                              NegativeOnIncoherent, NonHermitian, NonRealTrace)
from cohdetect.states import max_entangled, random_density, x_state
from cohdetect.witness import (NONNEG, NULL, Witness, dephasing_witness, eig_extremes,
                               example2_witnesses, example3_witness, example4_witness,
                               expectation, normalize, validate)
from oracles import random_hermitian


def test_constructor_enforces_null_diagonal():
    with pytest.raises(DiagonalNotZero):
        Witness(np.eye(2), (2,), NULL)


def test_constructor_enforces_nonneg_diagonal():
    Witness(np.eye(2), (2,), NONNEG)
    with pytest.raises(NegativeOnIncoherent):
        Witness(np.diag([1.0, -0.1]), (2,), NONNEG)


def test_constructor_rejects_non_hermitian_and_bad_convention():
    with pytest.raises(NonHermitian):
        Witness(np.array([[0, 1], [0, 0]]), (2,))
    with pytest.raises(ValueError):
        Witness(np.zeros((2, 2)), (2,), "positive")


def test_presets_are_null_witnesses():
    for w in (*example2_witnesses(), example3_witness(), example4_witness()):
        assert w.convention == NULL
        assert np.all(np.diag(w.mat) == 0)
        rep = validate(w, samples=20)
        assert rep.max_sample_abs == 0.0


def test_example3_witness_is_swap_flip():
    w = example3_witness().mat
    expected = np.zeros((4, 4))
    expected[1, 2] = expected[2, 1] = 1
    np.testing.assert_allclose(w, expected, atol=1e-15)


def test_linear_expectations_vanish_on_x_state():
    w, v = example2_witnesses()
    rho = x_state(0.7, 0.3)
    assert expectation(w, rho) == 0.0 and expectation(v, rho) == 0.0


def test_expectation_dim_mismatch():
    with pytest.raises(DimMismatch):
        expectation(example4_witness(), x_state(0.5, 0.5))


def test_expectation_rejects_complex_trace():
    # anti-Hermitian pairing via a non-Hermitian raw matrix
    w = np.array([[0, 1j], [0, 0]])
    with pytest.raises(NonRealTrace):
        expectation(w, np.array([[0.5, 0.5], [0.5, 0.5]]))


def test_dephasing_witness_value():
    rho = random_density(4, 9, (2, 2))
    w = dephasing_witness(rho)
    off = rho.mat - np.diag(np.diag(rho.mat))
    assert expectation(w, rho) == pytest.approx(-np.sum(np.abs(off) ** 2), abs=1e-15)


def test_eig_extremes():
    assert eig_extremes(example3_witness()) == pytest.approx((-1.0, 1.0))


def test_normalize_example():
    nw = normalize(dephasing_witness(max_entangled(2)))
    assert (nw.lambda_minus, nw.lambda_plus) == pytest.approx((-0.5, 0.5))
    np.testing.assert_allclose(np.linalg.eigvalsh(nw.mat)[[0, -1]], [-1, 1], atol=1e-14)


def test_normalize_degenerate():
    with pytest.raises(DegenerateSpectrum):
        normalize(3 * np.eye(4))


def test_validate_nonneg():
    rep = validate(Witness(np.diag([0.0, 2.0]), (2,), NONNEG))
    assert rep.diag_extreme == 0.0 and rep.samples == 0


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 9),
       scale=st.sampled_from([1e-6, 1.0, 1e4]))
def test_normalize_maps_spectrum_onto_unit_interval(seed, n, scale):
    a = random_hermitian(n, np.random.default_rng(seed), scale)
    ev = np.linalg.eigvalsh(normalize(a).mat)
    assert abs(ev[0] + 1) < 1e-12 and abs(ev[-1] - 1) < 1e-12
