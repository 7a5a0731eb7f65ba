"""Model tables, normal Jacobi spectra, classification, focal kernels."""

import numpy as np
import pytest

from hyperquadric import models as mdl
from hyperquadric.geometry import basis_vector, complex_structure
from hyperquadric.hypersurface import contact_defect, hopf_data, mean_curvature
from hyperquadric.lie import make_context
from hyperquadric.models import JacobiCase, Model
from hyperquadric.oracles import SampleStream, sample_unit_tangent

SQRT2 = np.sqrt(2.0)
ALPHA_Q_R1 = 1.5918916555204874   # sqrt(2) coth(sqrt(2))
MU_Q_R1 = 1.2563669098108796      # sqrt(2) tanh(sqrt(2))
R_FOR_K1 = 0.6232252401402305     # artanh(1/sqrt(2)) / sqrt(2)
EXP_NEG_SQRT2 = 0.2431167344342142


def test_tube_table_quadric_r1():
    table = mdl.tube_table(Model.QUADRIC_TUBE, 1.0, 3)
    assert table.alpha == pytest.approx(ALPHA_Q_R1, abs=1e-12)
    assert table.mu == pytest.approx(MU_Q_R1, abs=1e-12)
    assert table.lam == 0.0
    mults = {e.label.value: e.multiplicity for e in table.entries}
    assert mults == {"JVMinusN": 2, "VMinusN": 2, "ReebLine": 1}


def test_tube_table_realform_swaps_formulas():
    q = mdl.tube_table(Model.QUADRIC_TUBE, 0.8, 4)
    r = mdl.tube_table(Model.REALFORM_TUBE, 0.8, 4)
    assert r.alpha == pytest.approx(q.mu, abs=1e-14)
    assert r.mu == pytest.approx(q.alpha, abs=1e-14)


def test_horosphere_table():
    table = mdl.tube_table(Model.HOROSPHERE, None, 4)
    assert table.alpha == pytest.approx(SQRT2, abs=0)
    assert table.mu == pytest.approx(SQRT2, abs=0)
    assert table.lam == 0.0
    assert [e.multiplicity for e in table.entries] == [3, 3, 1]


def test_tube_table_rejects_bad_arguments():
    with pytest.raises(ValueError):
        mdl.tube_table(Model.QUADRIC_TUBE, -1.0, 3)
    with pytest.raises(ValueError):
        mdl.tube_table(Model.REALFORM_TUBE, 0.0, 3)
    with pytest.raises(ValueError):
        mdl.tube_table(Model.QUADRIC_TUBE, 1.0, 2)


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("r", [0.25, 0.5, 1.0, 2.0])
def test_table_identities_on_grid(m, r):
    for model in (Model.QUADRIC_TUBE, Model.REALFORM_TUBE):
        table = mdl.tube_table(model, r, m)
        k = mdl.tube_contact_constant(model, r)
        assert table.alpha * table.mu == pytest.approx(2.0, abs=1e-12)
        assert table.lam == 0.0
        assert k == pytest.approx(table.mu, abs=0)
        assert table.mean_curvature == pytest.approx(
            table.alpha + (m - 1) * k, abs=1e-12)


def test_contact_constant_values():
    assert mdl.tube_contact_constant(Model.QUADRIC_TUBE, 1.0) == \
        pytest.approx(MU_Q_R1, abs=1e-12)
    assert mdl.tube_contact_constant(Model.HOROSPHERE, None) == SQRT2
    for model, r in [(Model.QUADRIC_TUBE, 0.4), (Model.REALFORM_TUBE, 1.7),
                     (Model.HOROSPHERE, None)]:
        k = mdl.tube_contact_constant(model, r)
        alpha = mdl.tube_table(model, r, 3).alpha
        assert k * alpha == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("m", [3, 4])
def test_build_frame_passes_pointwise_checks(m):
    st = SampleStream(80 + m)
    for model, r in [(Model.QUADRIC_TUBE, 0.5), (Model.REALFORM_TUBE, 1.0),
                     (Model.HOROSPHERE, None)]:
        frame = mdl.build_frame(model, r, m)
        _, defect = hopf_data(frame)
        assert defect <= 1e-12
        assert contact_defect(frame) <= 1e-10
        assert abs(mean_curvature(frame) - frame.alpha - (m - 1) * frame.k) <= 1e-12
        rotated = mdl.rotate_frame(frame, st.angle(), st.rotation(m))
        _, defect = hopf_data(rotated)
        assert defect <= 1e-12
        assert contact_defect(rotated) <= 1e-10


def test_frame_conjugation_orientation():
    from hyperquadric.geometry import conjugation_apply
    q = mdl.build_frame(Model.QUADRIC_TUBE, 1.0, 3)
    assert q.conj_sign == 1
    assert (conjugation_apply(q.conj, q.normal) - q.normal).norm() <= 1e-14
    rf = mdl.build_frame(Model.REALFORM_TUBE, 1.0, 3)
    assert rf.conj_sign == -1
    assert (conjugation_apply(rf.conj, rf.normal) + rf.normal).norm() <= 1e-14


@pytest.mark.parametrize("m", [3, 4, 5])
def test_normal_jacobi_spectrum(m):
    ctx = make_context(m)
    expected = np.sort([0.0] * (m - 1) + [-2.0] * m)
    # fixed normal (AN = N) and negated normal (AN = -N) carry the same multiset
    for n in (basis_vector(ctx, 0), complex_structure(basis_vector(ctx, 0))):
        op, spectrum = mdl.normal_jacobi(n)
        assert np.abs(op - op.T).max() <= 1e-12
        assert np.abs(np.sort(spectrum) - expected).max() <= 1e-10
    st = SampleStream(90 + m)
    n = sample_unit_tangent(st, ctx, "principal")
    _, spectrum = mdl.normal_jacobi(n)
    assert np.abs(np.sort(spectrum) - expected).max() <= 1e-10


def test_normal_jacobi_opposite_is_exact_negative():
    ctx = make_context(3)
    st = SampleStream(91)
    for _ in range(5):
        n = sample_unit_tangent(st, ctx, "principal")
        assert mdl.jacobi_sign_discrepancy(n) <= 1e-10
        spectrum = np.linalg.eigvalsh(mdl.normal_jacobi_opposite(n))
        assert np.abs(np.sort(spectrum) - np.sort([0.0, 0.0, 2.0, 2.0, 2.0])).max() <= 1e-10


def test_jacobi_closed_form():
    # sigma = sqrt(2): pure decaying exponential
    for r in (0.0, 0.5, 1.0, 2.0):
        z, zp = mdl.jacobi_closed_form(JacobiCase.MINUS_TWO, SQRT2, r)
        assert z == pytest.approx(np.exp(-SQRT2 * r), abs=1e-12)
        assert zp == pytest.approx(-SQRT2 * np.exp(-SQRT2 * r), abs=1e-12)
    assert mdl.jacobi_closed_form(JacobiCase.MINUS_TWO, SQRT2, 1.0)[0] == \
        pytest.approx(EXP_NEG_SQRT2, abs=1e-14)
    # focal vanishing at the tube radius for the Reeb value
    r0 = 0.9
    alpha = SQRT2 / np.tanh(SQRT2 * r0)
    z, _ = mdl.jacobi_closed_form(JacobiCase.MINUS_TWO, alpha, r0)
    assert abs(z) <= 1e-12
    # initial conditions Z(0) = 1, Z'(0) = -sigma
    z, zp = mdl.jacobi_closed_form(JacobiCase.MINUS_TWO, 0.7, 0.0)
    assert z == 1.0 and zp == pytest.approx(-0.7, abs=0)
    z, zp = mdl.jacobi_closed_form(JacobiCase.ZERO, 0.7, 0.0)
    assert z == 1.0 and zp == -0.7
    with pytest.raises(ValueError):
        mdl.jacobi_closed_form(JacobiCase.ZERO, 0.0, -0.1)


def test_jacobi_closed_form_solves_its_ode():
    h = 1e-4
    for r in (0.3, 1.1, 1.9):
        for case, sigma in [(JacobiCase.MINUS_TWO, 1.3), (JacobiCase.ZERO, 0.4)]:
            zm = mdl.jacobi_closed_form(case, sigma, r - h)[0]
            z0 = mdl.jacobi_closed_form(case, sigma, r)[0]
            zp = mdl.jacobi_closed_form(case, sigma, r + h)[0]
            second = (zp - 2 * z0 + zm) / h ** 2
            target = 2.0 * z0 if case is JacobiCase.MINUS_TWO else 0.0
            assert abs(second - target) <= 1e-6


def test_solve_principal_curvatures():
    assert mdl.solve_principal_curvatures(1.0) == (2.0, 0.0, 1.0)
    alpha, lam, mu = mdl.solve_principal_curvatures(SQRT2)
    assert alpha == pytest.approx(SQRT2, abs=1e-15) and mu == pytest.approx(SQRT2)
    assert mdl.solve_principal_curvatures(2.0) == (1.0, 0.0, 2.0)
    with pytest.raises(ValueError):
        mdl.solve_principal_curvatures(0.0)
    with pytest.raises(ValueError):
        mdl.solve_principal_curvatures(-1.0)


def test_classify_trichotomy():
    case = mdl.classify(1.0)
    assert case.case is Model.QUADRIC_TUBE
    assert case.r == pytest.approx(R_FOR_K1, abs=1e-12)
    assert (case.alpha, case.lam, case.mu) == (2.0, 0.0, 1.0)
    case = mdl.classify(SQRT2)
    assert case.case is Model.HOROSPHERE and case.r is None
    case = mdl.classify(2.0)
    assert case.case is Model.REALFORM_TUBE
    assert case.r == pytest.approx(R_FOR_K1, abs=1e-12)
    # boundary tolerance
    assert mdl.classify(SQRT2 + 0.5e-9).case is Model.HOROSPHERE
    assert mdl.classify(SQRT2 + 1e-6).case is Model.REALFORM_TUBE
    with pytest.raises(ValueError):
        mdl.classify(0.0)


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("r", [0.25, 0.5, 1.0, 2.0])
def test_classification_roundtrip(m, r):
    for model in (Model.QUADRIC_TUBE, Model.REALFORM_TUBE):
        k = mdl.tube_contact_constant(model, r)
        case = mdl.classify(k)
        assert case.case is model
        assert case.r == pytest.approx(r, abs=1e-10)
    case = mdl.classify(mdl.tube_contact_constant(Model.HOROSPHERE, None))
    assert case.case is Model.HOROSPHERE


@pytest.mark.parametrize("m", [3, 4])
def test_focal_map_kernel(m):
    assert mdl.focal_map_kernel(mdl.classify(1.0), m) == 1
    assert mdl.focal_map_kernel(mdl.classify(SQRT2), m) == 0
    assert mdl.focal_map_kernel(mdl.classify(2.0), m) == m - 1


def test_tables_converge_to_horosphere():
    for model in (Model.QUADRIC_TUBE, Model.REALFORM_TUBE):
        table = mdl.tube_table(model, 12.0, 3)
        assert abs(table.alpha - SQRT2) <= 1e-8
        assert abs(table.mu - SQRT2) <= 1e-8


def test_table_validation():
    with pytest.raises(ValueError):
        mdl.PrincipalCurvatureTable(m=3, entries=(
            mdl.TableEntry(1.0, 5, mdl.EigenspaceLabel.REEB_LINE),))
    with pytest.raises(ValueError):
        mdl.PrincipalCurvatureTable(m=3, entries=(
            mdl.TableEntry(0.0, 2, mdl.EigenspaceLabel.JV_MINUS_N),
            mdl.TableEntry(1.0, 2, mdl.EigenspaceLabel.V_MINUS_N),
            mdl.TableEntry(np.inf, 1, mdl.EigenspaceLabel.REEB_LINE)))
