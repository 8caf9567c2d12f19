"""Smoke tests for the python bindings."""
import numpy as np
import pytest

import _bmz as bmz


def antisym(n, rng):
    m = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
    return m - m.T


def test_example_pair_and_jordan():
    c, cp = bmz.example_pair(0.5)
    assert c.shape == (4, 4)
    d = bmz.jordan_decompose(np.conj(c.T) @ cp)
    assert sorted(b.length for b in d.blocks) == [2, 2]
    for b in d.blocks:
        assert abs(b.eigenvalue - 0.5) < 1e-7
    assert d.residual < 1e-10


def test_canonical_pair_form():
    c, cp = bmz.example_pair(0.5)
    form = bmz.canonical_pair_form(c, cp)
    assert form.residual_c < 1e-9
    assert form.residual_cp < 1e-9
    (pd,) = form.pair_data
    assert pd.length == 2
    assert abs(pd.beta[0] * pd.beta_prime[0] - pd.eigenvalue) < 1e-10


def test_overlap_matches_known_value():
    c, cp = bmz.example_pair(0.5)
    r = bmz.overlap(c, cp)
    assert abs(r.value - 2.25) < 1e-9
    assert r.det_rel_discrepancy < 1e-8
    assert not r.orthogonal


def test_transition_density_trace():
    rng = np.random.default_rng(7)
    c, cp = antisym(6, rng), antisym(6, rng)
    rho = bmz.transition_density(c, cp)
    expected = sum(
        2.0 * pf.length * pf.eigenvalue / (1.0 + pf.eigenvalue)
        for pf in bmz.overlap(c, cp).per_pair_factors
    )
    assert abs(np.trace(rho) - expected) < 1e-8 * (1 + abs(expected))


def test_classic_bloch_messiah_roundtrip():
    amplitudes = [0.8, 0.45, 0.2]
    c = bmz.build_bcs_matrix(amplitudes)
    form = bmz.classic_bloch_messiah(c)
    assert sorted(np.round(form.c_values, 10)) == sorted(
        np.round(np.repeat(amplitudes, 2), 10)
    )
    assert np.allclose(np.conj(form.u.T) @ form.u, np.eye(6), atol=1e-12)


def test_uv_amplitudes():
    u, v = bmz.uv_amplitudes(3.0)
    assert u == pytest.approx(0.31622776601683794, abs=1e-15)
    assert v == pytest.approx(0.9486832980505138, abs=1e-15)


def test_errors_are_typed():
    with pytest.raises(bmz.BmzError):
        bmz.canonical_pair_form(np.ones((2, 2)), np.ones((2, 2)))
