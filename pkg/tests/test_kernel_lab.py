import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hardy_lab import kernel_lab as kl
from hardy_lab.errors import EndpointAlpha
from hardy_lab.pairs_dbr import boundary_kernel_representer, ma_complement
from hardy_lab.toeplitz import principal_angles

alpha_ok = st.floats(-0.29, 4.29).filter(lambda a: abs(a - (np.floor(a) + 0.5)) >= 0.2)


@pytest.mark.parametrize("op,value,tol,ok", [
    ("<", 1.0, 2.0, True), ("<", 2.0, 2.0, False), (">", 3.0, 2.0, True),
    (">=", 2.0, 2.0, True), ("==", 1, 1, True), ("<", float("nan"), 1.0, False),
])
def test_check_ops(op, value, tol, ok):
    c = kl.Check("x", value, tol, op)
    assert c.passed is ok
    assert c.verdict == ("pass" if ok else "fail")
    assert kl.Check("x", value, tol, op, kind="report").verdict == "report-only"


def test_report_accessors():
    r = kl.ScenarioReport("demo", {})
    r.check("a", 0.5, 1.0)
    r.report("info", 3)
    r.check("b", 5.0, 1.0)
    assert not r.passed
    assert [c.name for c in r.failures()] == ["b"]
    assert r.get("info").verdict == "report-only"
    other = kl.ScenarioReport("x", {})
    other.check("c", 0.0, 1.0)
    r.merge(other, "sub.")
    assert r.get("sub.c").passed


@given(alpha_ok)
def test_predicted_dim_interval(alpha):
    n = kl.predicted_dim(alpha)
    assert n - 0.5 < alpha <= n + 0.5


@pytest.mark.parametrize("alpha", [0.5, 1.45, 2.6, -0.6])
def test_endpoint_alphas_rejected(alpha):
    with pytest.raises(EndpointAlpha):
        kl.check_alphas([alpha])


def test_endpoint_margin_is_configurable():
    kl.check_alphas([1.4], margin=0.1)
    with pytest.raises(EndpointAlpha):
        kl.check_alphas([1.4])


def test_power_kernel_basis_contains_shifted_power():
    B = kl.power_kernel_basis(2.3, 2, 64)
    assert B.dim == 2
    assert kl.power_kernel_basis(0.3, 0, 64).dim == 0


def test_small_sweep_dimensions():
    r = kl.sweep_alpha((0.3, 1.0), m=128, m_check=64, n=1024)
    assert r.get("alpha=0.3.dim[m=128]").value == 0
    assert r.get("alpha=1.dim[m=128]").value == 1
    assert r.get("alpha=1.max_angle[m=128]").passed
    assert r.passed
    assert "alpha=1.m=128" in r.spectra


def test_sweep_jobs_do_not_change_results():
    a = kl.sweep_alpha((0.3, 1.0, 2.0), m=64, m_check=32, n=1024, jobs=1)
    b = kl.sweep_alpha((0.3, 1.0, 2.0), m=64, m_check=32, n=1024, jobs=3)
    assert [c.as_dict() for c in a.checks] == [c.as_dict() for c in b.checks]


@pytest.mark.parametrize("name", ["f1-z2", "fb-z"])
def test_quotient_kernel_instances(name):
    r = kl.theorem1_check(*kl.theorem1_instance(name), m=128, n=2048)
    assert r.passed, r.failures()


def test_unknown_quotient_instance():
    with pytest.raises(ValueError):
        kl.theorem1_instance("nope")


def test_pole_radius_and_grid_size():
    assert kl.pole_radius([]) > 1.0
    assert kl.pole_radius(kl.example_zeros(1)) == pytest.approx(1.0123, abs=1e-4)
    assert kl.auto_grid_size(kl.example_zeros(1)) == 8192
    assert kl.auto_grid_size(kl.example_zeros(4)) == 2 ** 19
    # even counts: the root at -1 cancels and is skipped
    assert kl.pole_radius(kl.example_zeros(2)) > 1.0


@pytest.mark.parametrize("mb,special", [(0, False), (1, True), (2, False), (3, True)])
def test_example_special_iff_odd(mb, special):
    data = kl.example_data(mb, n=4096)
    assert data.special is special
    assert abs(data.pair.b(np.array([-1.0 + 0j]))[0] - (-1.0) ** mb) < 1e-12


def test_example_data_rejects_negative():
    with pytest.raises(ValueError):
        kl.example_data(-1)


def test_fKI_samples_nonempty():
    data = kl.example_data(1)
    basis = kl.fKI_samples(data)
    assert len(basis) >= 1


def test_lemma_check_small():
    r = kl.lemma_hss_check(1, lambdas=(0.0,), tol=1e-7)
    assert r.passed


def test_example_odd_blaschke_passes():
    r = kl.example_s4(1, m=128)
    assert r.passed, r.failures()
    assert r.get("d.orthogonal_component").value > 0.01


def test_example_zero_blaschke_fails_orthogonality():
    # with I = z the function g lies in f K_I
    r = kl.example_s4(0, m=128)
    assert not r.get("d.orthogonal_component").passed


def test_random_polynomials_are_seeded():
    a = kl.random_polynomials(3, 5, seed=1)
    b = kl.random_polynomials(3, 5, seed=1)
    c = kl.random_polynomials(3, 5, seed=2)
    assert all(np.array_equal(x.coeffs, y.coeffs) for x, y in zip(a, b))
    assert not np.array_equal(a[0].coeffs, c[0].coeffs)


def test_complement_small():
    r = kl.complement_s5(d=16, m=128, basis=32, n_poly=3, probes=4)
    for name in ("complement_dim", "complement_angle", "a1_eigen", "intertwining",
                 "control.complement_dim", "reproducing_property", "backend_agreement"):
        assert r.get(name).passed, r.get(name)


def test_witness_small():
    r = kl.theorem2_witness(1, d=16, m=128)
    assert r.get("witness").passed


def test_complement_target_direction():
    pair = kl.b0_pair()
    res = ma_complement(pair, 16, 128)
    e = boundary_kernel_representer(pair, -1.0, 128)
    target = e.u.padded(16)[:16]
    assert np.max(principal_angles(res.subspace, target[:, None] / np.linalg.norm(target))) < 1e-3
