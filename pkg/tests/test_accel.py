"""The numba kernels and their numpy fallbacks agree."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardy_lab import _accel

NB = _accel.NUMBA_KERNELS
NP = _accel.NUMPY_KERNELS

pytestmark = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not importable")

finite = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def _c(xs):
    return np.ascontiguousarray(xs, dtype=np.complex128)


@given(st.lists(cplx, min_size=1, max_size=20), st.lists(cplx, min_size=1, max_size=20))
def test_toeplitz_parity(col, row):
    np.testing.assert_array_equal(NB["toeplitz"](_c(col), _c(row)), NP["toeplitz"](_c(col), _c(row)))


@given(st.lists(cplx, min_size=1, max_size=50),
       st.builds(complex, st.floats(-0.95, 0.95), st.floats(-0.3, 0.3)))
def test_divide_linear_parity(num, w):
    a = NB["divide_linear"](_c(num), w)
    b = NP["divide_linear"](_c(num), w)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_divide_linear_inverts_multiplication():
    rng = np.random.default_rng(0)
    c = rng.standard_normal(40) + 1j * rng.standard_normal(40)
    w = 0.3 - 0.4j
    num = c - w * np.concatenate([[0], c[:-1]])
    np.testing.assert_allclose(_accel.divide_linear(num, w), c, atol=1e-12)


@given(st.integers(1, 40), st.integers(-8, 0), st.integers(1, 8))
def test_direct_coeffs_parity(seed, kmin, span):
    rng = np.random.default_rng(seed)
    v = _c(rng.standard_normal(64) + 1j * rng.standard_normal(64))
    theta = 2 * np.pi * (np.arange(64) + 0.5) / 64
    a = NB["direct_coeffs"](v, theta, kmin, kmin + span)
    b = NP["direct_coeffs"](v, theta, kmin, kmin + span)
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_herglotz_quad_parity():
    rng = np.random.default_rng(1)
    w = _c(rng.random(128))
    theta = 2 * np.pi * (np.arange(128) + 0.5) / 128
    pts = _c([0.0, 0.3, -0.5j, 0.7 + 0.1j])
    np.testing.assert_allclose(NB["herglotz_quad"](w, theta, pts),
                               NP["herglotz_quad"](w, theta, pts), atol=1e-12)


zero = st.one_of(st.just(0.0), st.floats(1e-6, 0.95), st.floats(-0.95, -1e-6))


@given(st.lists(zero, min_size=0, max_size=6))
def test_blaschke_parity(zeros):
    pts = _c(np.exp(1j * np.linspace(0, 6, 17)) * 0.9)
    np.testing.assert_allclose(NB["blaschke"](_c(zeros), pts), NP["blaschke"](_c(zeros), pts),
                               atol=1e-13)


@given(st.floats(-0.49, 4.0), st.integers(0, 200))
def test_binomial_parity(alpha, m):
    np.testing.assert_allclose(NB["binomial"](alpha, m), NP["binomial"](alpha, m),
                               rtol=1e-12, atol=1e-300)


def test_binomial_values():
    np.testing.assert_allclose(_accel.binomial(1.0, 4), [1, -1, 0, 0])
    np.testing.assert_allclose(_accel.binomial(0.5, 3), [1, -0.5, -0.125])


def test_fallback_flag_selects_numpy(monkeypatch):
    import importlib
    monkeypatch.setenv("HARDY_LAB_DISABLE_NUMBA", "1")
    mod = importlib.reload(_accel)
    try:
        assert mod.USE_NUMBA is False
        assert mod.KERNELS is mod.NUMPY_KERNELS
    finally:
        monkeypatch.delenv("HARDY_LAB_DISABLE_NUMBA")
        importlib.reload(_accel)
