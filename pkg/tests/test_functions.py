import warnings

import numpy as np
import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from hardy_lab.circle_fft import Grid
from hardy_lab.errors import DivisionBlowup, NotOuter, RepeatedZeros, ZeroOnBoundary
from hardy_lab.functions import (
    InnerFn,
    blaschke,
    cauchy_kernel,
    helson_quotient,
    model_space_basis,
    monomial,
    outer_diagnostic,
    power_outer,
    rational_outer,
    winding_number,
)
from hardy_lab.toeplitz import principal_angles

G = Grid(1024)
disk_point = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 2 * np.pi))


@given(st.lists(disk_point, max_size=5))
def test_blaschke_unimodular_and_bounded(zeros):
    B = blaschke(zeros)
    assert B.unimodularity_error(G) < 1e-10
    assert B.interior_max() <= 1 + 1e-12
    for r in zeros:
        assert abs(B(r)) < 1e-10


def test_blaschke_rejects_boundary_zero():
    with pytest.raises(ZeroOnBoundary):
        blaschke([0.5, 1.0])


def test_monomial_and_products():
    z3 = monomial(3)
    np.testing.assert_allclose(z3(G.z), G.z ** 3)
    assert z3.origin_multiplicity == 3
    prod = z3 * blaschke([0.5])
    assert isinstance(prod, InnerFn)
    assert len(prod.zeros) == 4
    np.testing.assert_allclose(prod(0.2), 0.2 ** 3 * (0.5 - 0.2) / (1 - 0.1))


def test_constant_inner():
    c = InnerFn.constant(1j)
    assert c(0.3) == 1j
    with pytest.raises(ValueError):
        InnerFn.constant(2.0)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.7, 2.5])
def test_power_outer_taylor(alpha):
    f = power_outer(alpha)
    k = np.arange(20)
    np.testing.assert_allclose(f.taylor(19).coeffs, (-1.0) ** k * scipy.special.binom(alpha, k),
                               atol=1e-13)
    assert f(0.3) == pytest.approx(0.7 ** alpha)


def test_rational_outer():
    f = rational_outer([2, 1], [1, -0.5])
    c = f.taylor(5).coeffs
    np.testing.assert_allclose(c, [2, 2, 1, 0.5, 0.25, 0.125])
    assert outer_diagnostic(f) == [0, 0, 0]
    with pytest.raises(NotOuter):
        rational_outer([0.5, 1], [1])
    with pytest.raises(NotOuter):
        rational_outer([1], [1, -1])


def test_winding_number_counts_zeros():
    assert winding_number(blaschke([0.1, -0.5j]), 0.99) == 2
    assert winding_number(power_outer(1.5), 0.99) == 0


def test_cauchy_kernel_reproduces():
    lam = 0.4 - 0.3j
    k = cauchy_kernel(lam, 200)
    p = np.array([1.0, -2.0, 0.5j])
    assert abs(np.vdot(k.coeffs[:3], p) - np.polynomial.polynomial.polyval(lam, p)) < 1e-14
    with pytest.raises(ValueError):
        cauchy_kernel(1.0)


@given(st.lists(disk_point.filter(lambda r: abs(r) > 0.05), min_size=1, max_size=4, unique=True),
       st.integers(0, 2))
def test_model_space_is_orthogonal_to_inner_multiples(zeros, k0):
    if min(abs(a - b) for a in zeros for b in zeros + [10] if a != b) < 0.05:
        return
    I = monomial(k0) * blaschke(zeros)
    K = model_space_basis(I, 256)
    assert K.dim == len(zeros) + k0
    # I * z^j is orthogonal to the model space
    iz = I.coefficients(G, 256).coeffs
    for j in range(3):
        v = np.concatenate([np.zeros(j), iz[: 257 - j]])
        assert np.max(np.abs(K.basis.conj().T @ v)) < 1e-8


def test_model_space_repeated_zero():
    with pytest.raises(RepeatedZeros):
        model_space_basis(blaschke([0.3, 0.3]))


def test_model_space_of_monomial():
    K = model_space_basis(monomial(3), 32)
    assert np.max(principal_angles(K, np.eye(33)[:, :3])) < 1e-12


def test_helson_quotient_real():
    q = helson_quotient(monomial(2), blaschke([0.5]), G, check_outer=False)
    assert np.max(np.abs(q.values.imag)) < 1e-10


def test_helson_quotient_errors():
    with pytest.raises(DivisionBlowup):
        helson_quotient(monomial(1), monomial(1), G)
    with pytest.warns(UserWarning):
        helson_quotient(monomial(1), InnerFn.constant(-1.0) * monomial(2), G)


def test_disk_function_algebra():
    f = power_outer(1.0) * 2 + 1
    assert f(0.5) == pytest.approx(2.0)
    assert (1 / power_outer(1.0))(0.5) == pytest.approx(2.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert (-f)(0.0) == pytest.approx(-3.0)
