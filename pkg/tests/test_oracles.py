"""ODE integrator, tube oracle round-trips, transport checks, sampling."""

import numpy as np
import pytest

from hyperquadric import oracles as orc
from hyperquadric.geometry import classify_vector
from hyperquadric.lie import make_context
from hyperquadric.models import JacobiCase, Model, jacobi_closed_form, tube_table
from hyperquadric.oracles import OdeConfig, SampleStream, sample_unit_tangent

SQRT2 = np.sqrt(2.0)


def test_ode_config_validation():
    with pytest.raises(ValueError):
        OdeConfig(step=0.0)
    with pytest.raises(ValueError):
        OdeConfig(max_t=-1.0)
    with pytest.raises(ValueError):
        OdeConfig(method="euler")


def test_integrate_jacobi_flat_direction():
    v = np.array([0.3, -0.2])
    z, zp = orc.integrate_jacobi(np.zeros((2, 2)), v, np.zeros(2), 1.5,
                                 OdeConfig(step=1e-3))
    assert np.abs(z - v).max() <= 1e-12
    assert np.abs(zp).max() <= 1e-12


def test_integrate_jacobi_matches_closed_form():
    cfg = OdeConfig(step=1e-4)
    block = np.array([[-2.0]])
    for r in (0.25, 0.5, 1.0, 2.0):
        for sigma in (0.0, 0.9, SQRT2, 1.7):
            z, zp = orc.integrate_jacobi(block, np.array([1.0]),
                                         np.array([-sigma]), r, cfg)
            zc, zpc = jacobi_closed_form(JacobiCase.MINUS_TWO, sigma, r)
            assert abs(float(z[0]) - zc) <= 1e-8
            assert abs(float(zp[0]) - zpc) <= 1e-8


def test_integrate_jacobi_energy_invariant():
    cfg = OdeConfig(step=1e-3)
    sigma = 1.3
    energy0 = sigma ** 2 - 2.0
    for r in np.linspace(0.1, 2.0, 8):
        z, zp = orc.integrate_jacobi(np.array([[-2.0]]), np.array([1.0]),
                                     np.array([-sigma]), float(r), cfg)
        assert abs((float(zp[0]) ** 2 - 2.0 * float(z[0]) ** 2) - energy0) <= 1e-8


def test_rk4_convergence_order():
    sigma = 1.3
    zc, _ = jacobi_closed_form(JacobiCase.MINUS_TWO, sigma, 1.0)
    errs = []
    for h in (0.05, 0.025):
        z, _ = orc.integrate_jacobi(np.array([[-2.0]]), np.array([1.0]),
                                    np.array([-sigma]), 1.0, OdeConfig(step=h))
        errs.append(abs(float(z[0]) - zc))
    ratio = errs[0] / errs[1]
    assert 12.0 <= ratio <= 20.0


def test_integrate_jacobi_validates():
    with pytest.raises(ValueError):
        orc.integrate_jacobi(np.array([[0.0, 1.0], [0.0, 0.0]]),
                             np.zeros(2), np.zeros(2), 1.0)
    with pytest.raises(ValueError):
        orc.integrate_jacobi(np.array([[-2.0]]), np.array([1.0]),
                             np.array([0.0]), 10.0, OdeConfig(max_t=4.0))


@pytest.mark.parametrize("model", [Model.QUADRIC_TUBE, Model.REALFORM_TUBE])
@pytest.mark.parametrize("r,m", [(0.5, 3), (1.0, 3), (0.5, 4), (2.0, 4)])
def test_tube_shape_from_ode_matches_tables(model, r, m):
    cfg = OdeConfig(step=1e-3)
    ode = orc.tube_shape_from_ode(model, r, m, cfg)
    closed = tube_table(model, r, m)
    tol = 1e-8 if r <= 1.0 else 1e-7
    assert np.abs(ode.sorted_values() - closed.sorted_values()).max() <= tol
    assert [e.multiplicity for e in ode.entries] == \
        [e.multiplicity for e in closed.entries]


def test_tube_shape_from_ode_rejects_horosphere():
    with pytest.raises(ValueError):
        orc.tube_shape_from_ode(Model.HOROSPHERE, 1.0, 3)
    with pytest.raises(ValueError):
        orc.tube_shape_from_ode(Model.QUADRIC_TUBE, -0.5, 3)


@pytest.mark.parametrize("model,expected_kernel",
                         [(Model.QUADRIC_TUBE, 1), (Model.REALFORM_TUBE, 3)])
def test_focal_roundtrip(model, expected_kernel):
    kernel, shape_norm = orc.focal_shape_from_tube_ode(model, 1.0, 4, OdeConfig(step=1e-3))
    assert kernel == expected_kernel
    assert shape_norm <= 1e-6  # the focal submanifolds are totally geodesic


def test_transport_fd_check():
    ctx = make_context(3)
    st = SampleStream(30)
    x = sample_unit_tangent(st, ctx, "any")
    assert orc.transport_fd_check(x, 0.0) == 0.0
    parts = orc.transport_fd_residuals(x, 2.0)
    assert parts["parallel"] <= 1e-8
    assert parts["metric"] <= 1e-8
    assert parts["complex"] <= 1e-8
    assert parts["conjugation"] <= 1e-8
    assert orc.transport_fd_check(x, 1.0) <= 1e-8


def test_sample_stream_determinism():
    ctx = make_context(3)
    for kind in ("any", "principal", "isotropic", "regular"):
        a = sample_unit_tangent(SampleStream(123).child(2), ctx, kind)
        b = sample_unit_tangent(SampleStream(123).child(2), ctx, kind)
        assert np.array_equal(a.block, b.block)
    # different counters decorrelate
    st = SampleStream(123)
    a = sample_unit_tangent(st, ctx, "any")
    b = sample_unit_tangent(st, ctx, "any")
    assert not np.array_equal(a.block, b.block)


def test_sample_constraints():
    ctx = make_context(4)
    st = SampleStream(31)
    for _ in range(25):
        z = sample_unit_tangent(st, ctx, "principal")
        assert classify_vector(z).value == "principal"
        z = sample_unit_tangent(st, ctx, "isotropic")
        assert abs(complex(np.sum(z.w * z.w))) <= 1e-12
        assert classify_vector(z).value == "isotropic"
        z = sample_unit_tangent(st, ctx, "regular")
        assert classify_vector(z).value == "regular"
        assert abs(sample_unit_tangent(st, ctx, "any").norm() - 1.0) <= 1e-12
    with pytest.raises(ValueError):
        sample_unit_tangent(st, ctx, "weird")


def test_rotation_samples_are_special_orthogonal():
    st = SampleStream(32)
    for m in (3, 4, 5):
        q = st.rotation(m)
        assert np.abs(q.T @ q - np.eye(m)).max() <= 1e-12
        assert np.linalg.det(q) == pytest.approx(1.0, abs=1e-12)
