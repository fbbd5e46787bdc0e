import numpy as np
import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from hardy_lab import _accel
from hardy_lab.circle_fft import (
    AnalyticFunction,
    BoundaryFunction,
    Grid,
    h2_inner,
    h2_norm,
    herglotz,
    outer_from_modulus,
    project_plus,
    project_plus_samples,
    weighted_inner,
)
from hardy_lab.errors import GridMismatch, NonIntegrableLog, NonRealDensity

G = Grid(256)
finite = st.floats(-2, 2, allow_nan=False)
coeff_lists = st.lists(st.builds(complex, finite, finite), min_size=1, max_size=40)


def _random(seed, grid=G):
    rng = np.random.default_rng(seed)
    return BoundaryFunction(grid, rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n))


@pytest.mark.parametrize("n", [0, 32, 100, 96])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        Grid(n)


def test_grid_nodes_are_half_offset():
    g = Grid(64)
    assert g.theta[0] == pytest.approx(np.pi / 64)
    assert np.all(g.z != 1.0)
    np.testing.assert_allclose(np.abs(g.z), 1.0)
    assert g.refine().n == 128


@given(st.integers(0, 10_000))
def test_fft_roundtrip(seed):
    f = _random(seed)
    assert np.max(np.abs(f.roundtrip() - f.values)) < 1e-12


@given(st.integers(-100, 100))
def test_monomial_coefficients(k):
    f = BoundaryFunction.from_callable(G, lambda z: z ** k)
    expected = np.zeros(G.n)
    if -G.n // 2 <= k < G.n // 2:
        expected[k % G.n] = 1.0
    np.testing.assert_allclose(np.abs(f._fft_coeffs), expected, atol=1e-12)
    if -G.n // 2 <= k < G.n // 2:
        assert abs(f.coeff(k) - 1.0) < 1e-12


def test_from_coeffs_aliases_like_sampling():
    g = Grid(64)
    c = np.arange(1, 151) * (0.9 ** np.arange(150))
    direct = BoundaryFunction.from_callable(g, lambda z: np.polynomial.polynomial.polyval(z, c))
    folded = BoundaryFunction.from_coeffs(g, c)
    np.testing.assert_allclose(folded.values, direct.values, atol=1e-10)


def test_from_coeffs_negative_start():
    f = BoundaryFunction.from_coeffs(G, [2.0, 0.0, 3.0], kmin=-1)
    np.testing.assert_allclose(f.values, 2 / G.z + 3 * G.z, atol=1e-13)


def test_grid_mismatch():
    with pytest.raises(GridMismatch):
        _random(0) + _random(1, Grid(128))


@given(st.integers(0, 10_000))
def test_projection_idempotent_and_selfadjoint(seed):
    f, g = _random(seed), _random(seed + 1)
    pf = project_plus_samples(f)
    assert np.max(np.abs(project_plus_samples(pf).values - pf.values)) < 1e-10
    lhs = np.mean(pf.values * np.conj(g.values))
    rhs = np.mean(f.values * np.conj(project_plus_samples(g).values))
    assert abs(lhs - rhs) < 1e-10


def test_projection_keeps_nonnegative_frequencies():
    f = BoundaryFunction.from_callable(G, lambda z: 3 / z ** 2 + 1 + 2 * z)
    np.testing.assert_allclose(project_plus(f, 3).coeffs, [1, 2, 0, 0], atol=1e-13)


def test_herglotz_real_part_matches_density():
    w = BoundaryFunction.from_callable(G, lambda z: 2 + (z + 1 / z).real)
    h = herglotz(w)
    np.testing.assert_allclose(h.coeffs[:3], [2, 2, 0], atol=1e-13)
    np.testing.assert_allclose(h.on(G).values.real, w.values.real, atol=1e-12)


def test_herglotz_rejects_complex_density():
    with pytest.raises(NonRealDensity):
        herglotz(BoundaryFunction.from_callable(G, lambda z: z))


def test_outer_rejects_vanishing_modulus():
    w = BoundaryFunction(G, np.where(np.arange(G.n) == 3, 0.0, 1.0))
    with pytest.raises(NonIntegrableLog):
        outer_from_modulus(w)
    with pytest.raises(NonIntegrableLog):
        outer_from_modulus(BoundaryFunction(G, np.full(G.n, np.nan)))


def test_outer_of_smooth_modulus_is_exact():
    # |2 + z| has outer function 2 + z
    w = BoundaryFunction.from_callable(Grid(1024), lambda z: np.abs(2 + z))
    f = outer_from_modulus(w)
    np.testing.assert_allclose(f.coeffs[:4], [2, 1, 0, 0], atol=1e-12)


@pytest.mark.slow
def test_outer_power_matches_binomial_series():
    # log-singular modulus |1 - z|^0.7 converges like 1/n; 2^20 nodes reach 1e-6
    alpha = 0.7
    grid = Grid(2 ** 20)
    f = outer_from_modulus(BoundaryFunction.from_callable(grid, lambda z: np.abs(1 - z) ** alpha))
    k = np.arange(64)
    exact = (-1.0) ** k * scipy.special.binom(alpha, k)
    assert np.max(np.abs(f.coeffs[:64] - exact)) < 1e-6


@pytest.mark.slow
def test_outer_from_defect_of_b0():
    # 1 - |z (1 - z)/2|^2 = |(1 + z)/2|^2 on the circle
    grid = Grid(2 ** 20)
    b0 = grid.z * (1 - grid.z) / 2
    w = BoundaryFunction(grid, np.sqrt(np.clip(1 - np.abs(b0) ** 2, 0, None)))
    a = outer_from_modulus(w)
    assert np.max(np.abs(a.coeffs[:32] - np.r_[0.5, 0.5, np.zeros(30)])) < 1e-6


@given(coeff_lists, coeff_lists)
def test_inner_product_matches_quadrature(a, b):
    f, g = AnalyticFunction(a), AnalyticFunction(b)
    ones = BoundaryFunction(G, np.ones(G.n))
    assert abs(h2_inner(f, g) - weighted_inner(f, g, ones)) < 1e-10
    assert abs(h2_norm(f) ** 2 - h2_inner(f, f).real) < 1e-10


@given(coeff_lists)
def test_analytic_shift_downshift(a):
    f = AnalyticFunction(a)
    np.testing.assert_allclose(f.shift().downshift().coeffs, f.coeffs)
    z0 = 0.3 - 0.2j
    assert abs(f.shift()(z0) - z0 * f(z0)) < 1e-10


@given(coeff_lists, coeff_lists)
def test_analytic_product_is_pointwise(a, b):
    f, g = AnalyticFunction(a), AnalyticFunction(b)
    prod = f.multiply(g, order=f.order + g.order)
    z0 = 0.4 + 0.1j
    assert abs(prod(z0) - f(z0) * g(z0)) < 1e-9


def test_weighted_inner_requires_boundary_weight():
    with pytest.raises(TypeError):
        weighted_inner(1, 1, 1.0)


@given(st.integers(0, 10_000))
def test_fft_coefficients_match_direct_sum(seed):
    f = _random(seed)
    direct = _accel.direct_coeffs(f.values, G.theta, -20, 20)
    np.testing.assert_allclose(f.coeff(np.arange(-20, 20)), direct, atol=1e-12)


def test_herglotz_matches_quadrature_integral():
    w = BoundaryFunction.from_callable(G, lambda z: 1 / np.abs(1.5 - z) ** 2)
    pts = np.array([0.0, 0.3, -0.5j, 0.6 + 0.2j])
    H = herglotz(w)
    np.testing.assert_allclose(H(pts), _accel.herglotz_quad(w.values, G.theta, pts), atol=1e-10)
