"""Command-line surface: tables, classification, decomposition, verification.

Subcommands:

    table      closed-form principal curvature table of a model hypersurface
    classify   map a contact constant k to its model hypersurface
    decompose  singular decomposition of a unit tangent vector
    oracle     ODE-integrated tube table next to the closed form
    verify     run an invariant suite and emit a machine-readable report

Exit codes: 0 success / verification pass, 1 verification failure, 2 usage
error.  JSON output is schema-stable ({suite, m, seed, checks[], overall}
for verify) with numbers rounded to 15 significant digits, and identical
invocations produce byte-identical bytes: all randomness flows through the
seeded sample streams.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from . import hypersurface as hyp
from . import models as mdl
from . import oracles as orc
from .lie import bracket, cartan_split, exp, group_residual, make_context

R_GRID = (0.25, 0.5, 1.0, 2.0)

# artanh(1/sqrt(2))/sqrt(2) to 30 digits; radius of both anchor tubes below.
R_ANCHOR = 0.623225240140230513394020080250


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


def _sig15(x: float) -> float:
    """Round to 15 significant digits for stable serialization."""
    return float(f"{float(x):.15g}")


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def curvature_suite(m: int, seed: int, samples: int) -> list[Check]:
    """Curvature tensor against the bracket oracle plus its symmetries."""
    ctx = make_context(m)
    st = orc.SampleStream(seed).child(0)
    triples = [tuple(orc.sample_unit_tangent(st, ctx, "any") for _ in range(3))
               for _ in range(samples)]

    r_oracle = 0.0
    r_anti = 0.0
    r_pair = 0.0
    r_bianchi = 0.0
    for x, y, z in triples:
        r = geo.curvature(x, y, z)
        r_oracle = max(r_oracle, (r - geo.curvature_oracle(x, y, z)).norm())
        r_anti = max(r_anti, (r + geo.curvature(y, x, z)).norm())
        w = orc.sample_unit_tangent(st, ctx, "any")
        r_pair = max(r_pair, abs(geo.metric(r, w) + geo.metric(geo.curvature(x, y, w), z)))
        cyc = r + geo.curvature(y, z, x) + geo.curvature(z, x, y)
        r_bianchi = max(r_bianchi, cyc.norm())

    thetas = np.linspace(0.0, 2.0 * np.pi, 8, endpoint=False)
    r_conj = 0.0
    for x, y, z in triples[: min(len(triples), 100)]:
        base = geo.curvature(x, y, z, geo.Conjugation(0.0))
        for th in thetas[1:]:
            r_conj = max(r_conj, (geo.curvature(x, y, z, geo.Conjugation(th)) - base).norm())

    r_sect = 0.0
    for _ in range(min(samples, 100)):
        x = orc.sample_unit_tangent(st, ctx, "principal")
        jx = geo.complex_structure(x)
        r_sect = max(r_sect, abs(geo.metric(geo.curvature(x, jx, jx), x) + 2.0))

    r_cartan = 0.0
    r_exp = 0.0
    r_one_param = 0.0
    for _ in range(100):
        a = st.algebra_element(ctx)
        b = st.algebra_element(ctx)
        ka, ma = cartan_split(a)
        kb, mb = cartan_split(b)
        for prod, part in ((bracket(ka, kb), 1), (bracket(ka, mb), 0), (bracket(ma, mb), 1)):
            kp, mp = cartan_split(prod)
            leak = (mp if part == 1 else kp).mat
            r_cartan = max(r_cartan, np.abs(leak).max() / max(1.0, np.abs(prod.mat).max()))
        t1, t2 = st.uniform(-2.0, 2.0), st.uniform(-2.0, 2.0)
        g1 = exp(a, t1)
        r_exp = max(r_exp, group_residual(g1))
        g12 = exp(a, t1 + t2)
        r_one_param = max(r_one_param,
                          float(np.abs(g1.mat @ exp(a, t2).mat - g12.mat).max()
                                / max(1.0, np.abs(g12.mat).max())))

    return [
        Check("curvature_vs_bracket_oracle", r_oracle, 1e-12),
        Check("curvature_conjugation_independence", r_conj, 1e-12),
        Check("curvature_antisymmetry", r_anti, 1e-12),
        Check("curvature_pair_antisymmetry", r_pair, 1e-12),
        Check("curvature_first_bianchi", r_bianchi, 1e-12),
        Check("principal_plane_sectional_value", r_sect, 1e-12),
        Check("cartan_bracket_relations", r_cartan, 1e-12),
        Check("exp_group_membership", r_exp, 1e-10),
        Check("exp_one_parameter", r_one_param, 1e-10),
    ]


def decompose_suite(m: int, seed: int, samples: int) -> list[Check]:
    """Singular decomposition round-trips and conjugation axioms."""
    ctx = make_context(m)
    st = orc.SampleStream(seed).child(1)
    kinds = ("principal", "isotropic", "regular", "any")

    r_rec = 0.0
    r_q = 0.0
    misclassified = 0
    for i in range(samples):
        kind = kinds[i % 4]
        z = orc.sample_unit_tangent(st, ctx, kind)
        dec = geo.singular_decompose(z)
        r_rec = max(r_rec, (dec.reconstruct() - z).norm())
        qmod = abs(complex(np.sum(z.w * z.w)))
        r_q = max(r_q, abs(qmod - np.cos(2.0 * dec.t)))
        if kind != "any" and dec.kind.value != kind:
            misclassified += 1

    r_inv = 0.0
    r_iso = 0.0
    r_anti = 0.0
    r_eig = 0.0
    for _ in range(min(samples, 100)):
        a = geo.Conjugation(st.angle())
        x = orc.sample_unit_tangent(st, ctx, "any")
        y = orc.sample_unit_tangent(st, ctx, "any")
        ax, ay = geo.conjugation_apply(a, x), geo.conjugation_apply(a, y)
        r_inv = max(r_inv, (geo.conjugation_apply(a, ax) - x).norm())
        r_iso = max(r_iso, abs(geo.metric(ax, ay) - geo.metric(x, y)))
        r_anti = max(r_anti, (geo.conjugation_apply(a, geo.complex_structure(x))
                              + geo.complex_structure(ax)).norm())
        plus, minus = geo.v_space_basis(ctx, a)
        for v in plus:
            r_eig = max(r_eig, (geo.conjugation_apply(a, v) - v).norm())
        for v in minus:
            r_eig = max(r_eig, (geo.conjugation_apply(a, v) + v).norm())

    return [
        Check("decomposition_reconstruction", r_rec, 1e-10),
        Check("q_modulus_vs_cos2t", r_q, 1e-14),
        Check("classification_by_construction", float(misclassified), 0.0),
        Check("conjugation_involution", r_inv, 1e-12),
        Check("conjugation_isometry", r_iso, 1e-12),
        Check("conjugation_anticommutes_j", r_anti, 1e-12),
        Check("v_space_eigenbasis", r_eig, 1e-12),
    ]


def _model_grid(m: int) -> list[tuple[mdl.Model, float | None]]:
    out: list[tuple[mdl.Model, float | None]] = []
    for model in (mdl.Model.QUADRIC_TUBE, mdl.Model.REALFORM_TUBE):
        out.extend((model, r) for r in R_GRID)
    out.append((mdl.Model.HOROSPHERE, None))
    return out


def tubes_suite(m: int, seed: int, samples: int,
                step: float = 1e-4) -> list[Check]:
    """Tube tables two ways, normal Jacobi spectra, classification round-trip."""
    ctx = make_context(m)
    st = orc.SampleStream(seed).child(2)
    cfg = orc.OdeConfig(step=step)

    normals = [geo.basis_vector(ctx, 0),
               geo.complex_structure(geo.basis_vector(ctx, 0))]
    normals += [orc.sample_unit_tangent(st, ctx, "principal") for _ in range(3)]
    expected = np.sort(np.array([0.0] * (m - 1) + [-2.0] * m))
    r_sym = 0.0
    r_spec_fixed = 0.0
    r_spec_neg = 0.0
    r_info = 0.0
    for i, n in enumerate(normals):
        op, spectrum = mdl.normal_jacobi(n)
        r_sym = max(r_sym, float(np.abs(op - op.T).max()))
        dev = float(np.abs(np.sort(spectrum) - expected).max())
        if i == 1:
            r_spec_neg = max(r_spec_neg, dev)
        else:
            r_spec_fixed = max(r_spec_fixed, dev)
        r_info = max(r_info, mdl.jacobi_sign_discrepancy(n))

    r_ode = 0.0
    for model in (mdl.Model.QUADRIC_TUBE, mdl.Model.REALFORM_TUBE):
        for r in R_GRID:
            closed = mdl.tube_table(model, r, m).sorted_values()
            ode = orc.tube_shape_from_ode(model, r, m, cfg).sorted_values()
            r_ode = max(r_ode, float(np.abs(closed - ode).max()))

    r_alg = 0.0
    r_round = 0.0
    for model, r in _model_grid(m):
        table = mdl.tube_table(model, r, m)
        k = mdl.tube_contact_constant(model, r)
        r_alg = max(r_alg,
                    abs(table.alpha * table.mu - 2.0),
                    abs(table.lam),
                    abs(k - table.mu),
                    abs(table.mean_curvature - table.alpha - (m - 1) * k))
        case = mdl.classify(k)
        if case.case is not model:
            r_round += 1.0
        elif r is not None:
            r_round = max(r_round, abs(case.r - r))

    anchors = [(1.0, mdl.Model.QUADRIC_TUBE, R_ANCHOR),
               (mdl.SQRT2, mdl.Model.HOROSPHERE, None),
               (2.0, mdl.Model.REALFORM_TUBE, R_ANCHOR)]
    r_anchor = 0.0
    kernel_bad = 0.0
    expected_kernels = {mdl.Model.QUADRIC_TUBE: 1, mdl.Model.HOROSPHERE: 0,
                        mdl.Model.REALFORM_TUBE: m - 1}
    for k, want_case, want_r in anchors:
        case = mdl.classify(k)
        if case.case is not want_case:
            r_anchor += 1.0
        if want_r is not None:
            r_anchor = max(r_anchor, abs(case.r - want_r))
        if mdl.focal_map_kernel(case, m) != expected_kernels[want_case]:
            kernel_bad += 1.0

    r_limit = 0.0
    for model in (mdl.Model.QUADRIC_TUBE, mdl.Model.REALFORM_TUBE):
        table = mdl.tube_table(model, 12.0, m)
        r_limit = max(r_limit, abs(table.alpha - mdl.SQRT2), abs(table.mu - mdl.SQRT2))

    h = 1e-4
    r_closed = 0.0
    for rr in (0.3, 0.9, 1.7):
        for case, sigma in ((mdl.JacobiCase.MINUS_TWO, 1.3), (mdl.JacobiCase.ZERO, 0.7)):
            zm, _ = mdl.jacobi_closed_form(case, sigma, rr - h)
            z0, _ = mdl.jacobi_closed_form(case, sigma, rr)
            zp, _ = mdl.jacobi_closed_form(case, sigma, rr + h)
            second = (zp - 2.0 * z0 + zm) / h ** 2
            target = 2.0 * z0 if case is mdl.JacobiCase.MINUS_TWO else 0.0
            r_closed = max(r_closed, abs(second - target))

    return [
        Check("normal_jacobi_symmetry", r_sym, 1e-12),
        Check("normal_jacobi_spectrum_principal", r_spec_fixed, 1e-10),
        Check("normal_jacobi_spectrum_negated_normal", r_spec_neg, 1e-10),
        Check("normal_jacobi_sign_variant_info", r_info, 1e-10),
        Check("tube_tables_vs_ode", r_ode, 1e-7),
        Check("tube_table_identities", r_alg, 1e-12),
        Check("classification_roundtrip", r_round, 1e-10),
        Check("classification_anchor_cases", r_anchor, 1e-12),
        Check("focal_kernel_dimensions", kernel_bad, 0.0),
        Check("horosphere_limit_r12", r_limit, 1e-8),
        Check("jacobi_closed_form_ode_residual", r_closed, 1e-6),
    ]


def _model_frames(m: int, st: orc.SampleStream, n_rot: int) -> list[hyp.HypersurfaceFrame]:
    """Grid frames for the three models plus isotropy-rotated copies."""
    frames = []
    for model, r in _model_grid(m):
        frames.append(mdl.build_frame(model, r, m))
    for model in mdl.Model:
        for i in range(n_rot):
            r = R_GRID[i % len(R_GRID)] if model.has_radius else None
            base = mdl.build_frame(model, r, m)
            frames.append(mdl.rotate_frame(base, st.angle(), st.rotation(m)))
    return frames


def contact_suite(m: int, seed: int, samples: int) -> list[Check]:
    """Contact-hypersurface defects and curvature identities on model frames."""
    st = orc.SampleStream(seed).child(3)
    frames = _model_frames(m, st, n_rot=5)

    r_hopf = 0.0
    r_contact = 0.0
    r_deta = 0.0
    r_mean = 0.0
    r_ak = 0.0
    r_eig = 0.0
    for frame in frames:
        _, defect = hyp.hopf_data(frame)
        r_hopf = max(r_hopf, defect)
        r_contact = max(r_contact, hyp.contact_defect(frame))
        r_deta = max(r_deta, hyp.deta_defect(frame, frame.k / 2.0))
        r_mean = max(r_mean, hyp.mean_curvature_residual(frame))
        r_ak = max(r_ak, abs(frame.alpha * frame.k - 2.0))
        aplus = geo.singular_decompose(frame.normal).conj
        for i, b in enumerate(frame.basis[:-1]):
            ab = geo.conjugation_apply(aplus, b)
            if m - 1 <= i < 2 * (m - 1):  # mu-block lies in the fixed space
                r_eig = max(r_eig, (ab - b).norm())
            elif i < m - 1:              # lambda-block lies in its J-image
                r_eig = max(r_eig, (ab + b).norm())

    return [
        Check("hopf_defect", r_hopf, 1e-12),
        Check("contact_defect", r_contact, 1e-10),
        Check("deta_defect_rho_k_half", r_deta, 1e-10),
        Check("mean_curvature_identity", r_mean, 1e-12),
        Check("alpha_k_product", r_ak, 1e-12),
        Check("shape_eigenspace_membership", r_eig, 1e-10),
    ]


def identities_suite(m: int, seed: int, samples: int) -> list[Check]:
    """Almost-contact axioms, invariant subspaces, pointwise identities."""
    ctx = make_context(m)
    st = orc.SampleStream(seed).child(4)

    kinds = ("principal", "isotropic", "regular")
    r_axioms = 0.0
    dim_bad = 0.0
    r_stab = 0.0
    n_normals = min(samples, 100)
    thetas = np.linspace(0.0, 2.0 * np.pi, 16, endpoint=False)
    for i in range(n_normals):
        n = orc.sample_unit_tangent(st, ctx, kinds[i % 3])
        basis = hyp.frame_basis_for_normal(n)
        ac = hyp.induced_structure(n, basis)
        r_axioms = max(r_axioms, max(hyp.almost_contact_residuals(ac).values()))
        dim, qbasis = hyp.conjugation_invariant_subspace(n)
        want = 2 * m - 2 if geo.classify_vector(n) is geo.VectorKind.PRINCIPAL else 2 * m - 4
        if dim != want:
            dim_bad += 1.0
        for th in thetas:
            a = geo.Conjugation(float(th))
            for v in qbasis:
                r_stab = max(r_stab, abs(geo.metric(geo.conjugation_apply(a, v), n)))

    n_rot = max(1, min(50, samples // 4))
    frames = _model_frames(m, st, n_rot=n_rot)
    r_codazzi = 0.0
    r_square = 0.0
    r_shape = 0.0
    r_principal = 0.0
    for frame in frames:
        r_codazzi = max(r_codazzi, hyp.hopf_codazzi_residual(frame))
        r_square = max(r_square, hyp.contact_square_residual(frame))
        for _ in range(3):
            a = geo.Conjugation(st.angle())
            r_square = max(r_square, hyp.contact_square_residual(frame, conj=a))
        r_shape = max(r_shape, hyp.shape_conjugation_residual(frame))
        aplus = geo.singular_decompose(frame.normal).conj
        r_principal = max(r_principal,
                          (geo.conjugation_apply(aplus, frame.normal) - frame.normal).norm())

    return [
        Check("almost_contact_axioms", r_axioms, 1e-12),
        Check("invariant_subspace_dimensions", dim_bad, 0.0),
        Check("invariant_subspace_stability", r_stab, 1e-10),
        Check("hopf_codazzi_identity", r_codazzi, 1e-10),
        Check("contact_square_identity", r_square, 1e-9),
        Check("shape_conjugation_identity", r_shape, 1e-10),
        Check("model_normal_is_principal", r_principal, 1e-10),
    ]


def oracle_suite(m: int, seed: int, samples: int,
                 step: float = 1e-4) -> list[Check]:
    """ODE integrator quality and parallel-transport finite differences."""
    ctx = make_context(m)
    st = orc.SampleStream(seed).child(5)
    cfg = orc.OdeConfig(step=step)

    r_closed = 0.0
    r_energy = 0.0
    minus_two = np.array([[-2.0]])
    for r in R_GRID:
        for sigma in (0.0, 0.9, mdl.SQRT2, 1.7):
            z, zp = orc.integrate_jacobi(minus_two, np.array([1.0]), np.array([-sigma]), r, cfg)
            zc, zpc = mdl.jacobi_closed_form(mdl.JacobiCase.MINUS_TWO, sigma, r)
            r_closed = max(r_closed, abs(float(z[0]) - zc), abs(float(zp[0]) - zpc))
            energy0 = sigma ** 2 - 2.0
            r_energy = max(r_energy, abs((float(zp[0]) ** 2 - 2.0 * float(z[0]) ** 2) - energy0))
            z, zp = orc.integrate_jacobi(np.array([[0.0]]), np.array([1.0]),
                                         np.array([-sigma]), r, cfg)
            zc, zpc = mdl.jacobi_closed_form(mdl.JacobiCase.ZERO, sigma, r)
            r_closed = max(r_closed, abs(float(z[0]) - zc), abs(float(zp[0]) - zpc))

    sigma = 1.3
    errs = []
    for h in (0.05, 0.025):
        z, _ = orc.integrate_jacobi(minus_two, np.array([1.0]), np.array([-sigma]), 1.0,
                                    orc.OdeConfig(step=h))
        zc, _ = mdl.jacobi_closed_form(mdl.JacobiCase.MINUS_TWO, sigma, 1.0)
        errs.append(abs(float(z[0]) - zc))
    ratio = errs[0] / errs[1]
    r_order = abs(ratio - 16.0)

    kernel_bad = 0.0
    r_focal = 0.0
    for model, expected in ((mdl.Model.QUADRIC_TUBE, 1), (mdl.Model.REALFORM_TUBE, m - 1)):
        kernel, shape_norm = orc.focal_shape_from_tube_ode(model, 1.0, m, cfg)
        if kernel != expected:
            kernel_bad += 1.0
        r_focal = max(r_focal, shape_norm)

    x = orc.sample_unit_tangent(st, ctx, "any")
    res0 = orc.transport_fd_check(x, 0.0, cfg)
    parts = orc.transport_fd_residuals(x, 2.0, cfg)
    r_par = max(res0, parts["parallel"])
    r_met = parts["metric"]
    r_cx = parts["complex"]
    r_fiber = parts["conjugation"]

    s1 = orc.SampleStream(seed).child(6)
    s2 = orc.SampleStream(seed).child(6)
    r_det = 0.0
    for kind in ("any", "principal", "isotropic", "regular"):
        a = orc.sample_unit_tangent(s1, ctx, kind)
        b = orc.sample_unit_tangent(s2, ctx, kind)
        r_det = max(r_det, (a - b).norm())

    return [
        Check("jacobi_ode_vs_closed_form", r_closed, 1e-7),
        Check("rk4_convergence_ratio", r_order, 4.0),
        Check("jacobi_energy_invariant", r_energy, 1e-8),
        Check("tube_focal_roundtrip_kernel", kernel_bad, 0.0),
        Check("tube_focal_shape_vanishes", r_focal, 1e-6),
        Check("transport_parallel_residual", r_par, 1e-8),
        Check("transport_metric_constancy", r_met, 1e-8),
        Check("transport_complex_compat", r_cx, 1e-8),
        Check("conjugation_fiber_direction", r_fiber, 1e-8),
        Check("sampling_determinism", r_det, 0.0),
    ]


SUITES = {
    "curvature": curvature_suite,
    "decompose": decompose_suite,
    "tubes": tubes_suite,
    "contact": contact_suite,
    "identities": identities_suite,
    "oracle": oracle_suite,
}


def run_suite(suite: str, m: int, seed: int, samples: int,
              step: float = 1e-4, tol: float | None = None) -> dict:
    """Run a named suite (or all of them) and assemble the report dict."""
    if suite == "all":
        checks: list[Check] = []
        for name, fn in SUITES.items():
            for c in _run_one(fn, m, seed, samples, step):
                checks.append(Check(f"{name}/{c.name}", c.residual, c.tolerance))
    elif suite in SUITES:
        checks = _run_one(SUITES[suite], m, seed, samples, step)
    else:
        raise KeyError(suite)
    if tol is not None:
        checks = [Check(c.name, c.residual, tol) for c in checks]
    return {
        "suite": suite,
        "m": m,
        "seed": seed,
        "checks": [{"name": c.name,
                    "residual": _sig15(c.residual),
                    "tolerance": _sig15(c.tolerance),
                    "pass": c.passed} for c in checks],
        "overall": all(c.passed for c in checks),
    }


def _run_one(fn, m, seed, samples, step) -> list[Check]:
    if fn in (tubes_suite, oracle_suite):
        return fn(m, seed, samples, step=step)
    return fn(m, seed, samples)


# ---------------------------------------------------------------------------
# Rendering and argument handling
# ---------------------------------------------------------------------------

def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        for line in text_lines():
            print(line)


def _table_payload(model: mdl.Model, r: float | None, m: int) -> dict:
    table = mdl.tube_table(model, r, m)
    k = mdl.tube_contact_constant(model, r)
    return {
        "model": model.cli_name,
        "case": model.value,
        "m": m,
        "r": _sig15(r) if r is not None else None,
        "entries": [{"value": _sig15(e.value),
                     "multiplicity": e.multiplicity,
                     "label": e.label.value} for e in table.entries],
        "alpha": _sig15(table.alpha),
        "lambda": _sig15(table.lam),
        "mu": _sig15(table.mu),
        "k": _sig15(k),
        "mean_curvature": _sig15(table.mean_curvature),
        "alpha_mu_product": _sig15(table.alpha * table.mu),
    }


def cmd_table(args) -> int:
    model = _model_from_flag(args.model)
    payload = _table_payload(model, args.r, args.m)

    def lines():
        yield f"model: {payload['model']}   m: {payload['m']}   r: {payload['r']}"
        yield f"{'principal curvature':>22}  {'eigenspace':<10}  multiplicity"
        for e in payload["entries"]:
            yield f"{e['value']:>22.15g}  {e['label']:<10}  {e['multiplicity']}"
        yield f"k = {payload['k']:.15g}"
        yield f"H = {payload['mean_curvature']:.15g}"
        yield f"alpha*mu = {payload['alpha_mu_product']:.15g}"

    _emit(payload, args.format, lines)
    return 0


def cmd_classify(args) -> int:
    case = mdl.classify(args.k)
    payload = {
        "k": _sig15(args.k),
        "case": case.case.value,
        "model": case.case.cli_name,
        "r": _sig15(case.r) if case.r is not None else None,
        "alpha": _sig15(case.alpha),
        "lambda": _sig15(case.lam),
        "mu": _sig15(case.mu),
    }

    def lines():
        yield f"case: {payload['case']}"
        yield f"r: {payload['r']}"
        yield f"alpha: {payload['alpha']:.15g}"
        yield f"lambda: {payload['lambda']:.15g}"
        yield f"mu: {payload['mu']:.15g}"

    _emit(payload, args.format, lines)
    return 0


def _parse_vector(text: str, m_flag: int | None):
    try:
        pairs = json.loads(text)
        w = np.array([complex(float(p[0]), float(p[1])) for p in pairs])
    except Exception as exc:
        raise ValueError(f"vector must be a JSON array of [re, im] pairs: {exc}")
    if m_flag is not None and len(w) != m_flag:
        raise ValueError(f"vector has {len(w)} components but --m is {m_flag}")
    if len(w) < 3:
        raise ValueError("need at least 3 components (m >= 3)")
    return w


def cmd_decompose(args) -> int:
    w = _parse_vector(args.vector, args.m)
    ctx = make_context(len(w))
    nrm = float(np.linalg.norm(np.concatenate([w.real, w.imag])))
    if abs(nrm - 1.0) > 1e-3:
        raise ValueError(f"vector norm {nrm:.6g} is not within 1e-3 of 1")
    if abs(nrm - 1.0) > 1e-6:
        print(f"warning: renormalizing input of norm {nrm:.9g}", file=sys.stderr)
        w = w / nrm
    z = geo.tangent_from_complex(ctx, w)
    dec = geo.singular_decompose(z.unit())
    qmod = abs(complex(np.sum(z.unit().w * z.unit().w)))
    payload = {
        "m": ctx.m,
        "norm": _sig15(nrm),
        "t": _sig15(dec.t),
        "theta": _sig15(dec.theta),
        "theta_defined": dec.theta_defined,
        "kind": dec.kind.value,
        "q_modulus": _sig15(qmod),
        "reconstruction_residual": _sig15((dec.reconstruct() - z.unit()).norm()),
    }

    def lines():
        for key in ("m", "norm", "t", "theta", "theta_defined", "kind",
                    "q_modulus", "reconstruction_residual"):
            yield f"{key}: {payload[key]}"

    _emit(payload, args.format, lines)
    return 0


def cmd_oracle(args) -> int:
    model = _model_from_flag(args.model)
    if model is mdl.Model.HOROSPHERE:
        raise ValueError("the horosphere has no focal construction; pick a tube model")
    cfg = orc.OdeConfig(step=args.step)
    ode_table = orc.tube_shape_from_ode(model, args.r, args.m, cfg)
    closed = mdl.tube_table(model, args.r, args.m)
    resid = float(np.abs(ode_table.sorted_values() - closed.sorted_values()).max())
    payload = {
        "model": model.cli_name,
        "m": args.m,
        "r": _sig15(args.r),
        "step": _sig15(args.step),
        "ode": {"alpha": _sig15(ode_table.alpha), "lambda": _sig15(ode_table.lam),
                "mu": _sig15(ode_table.mu)},
        "closed_form": {"alpha": _sig15(closed.alpha), "lambda": _sig15(closed.lam),
                        "mu": _sig15(closed.mu)},
        "max_residual": _sig15(resid),
    }

    def lines():
        yield f"model: {payload['model']}   m: {payload['m']}   r: {payload['r']}   step: {payload['step']}"
        yield (f"ode:         alpha={payload['ode']['alpha']:.12g} "
               f"lambda={payload['ode']['lambda']:.3g} mu={payload['ode']['mu']:.12g}")
        yield (f"closed form: alpha={payload['closed_form']['alpha']:.12g} "
               f"lambda={payload['closed_form']['lambda']:.3g} mu={payload['closed_form']['mu']:.12g}")
        yield f"max residual: {payload['max_residual']:.3e}"

    _emit(payload, args.format, lines)
    return 0


def cmd_verify(args) -> int:
    try:
        report = run_suite(args.suite, args.m, args.seed, args.samples,
                           step=args.step, tol=args.tol)
    except KeyError:
        raise ValueError(f"unknown suite {args.suite!r}; "
                         f"expected one of {sorted(SUITES) + ['all']}")

    def lines():
        yield f"suite: {report['suite']}   m: {report['m']}   seed: {report['seed']}"
        for c in report["checks"]:
            flag = "PASS" if c["pass"] else "FAIL"
            yield f"{flag}  {c['name']:<42} residual={c['residual']:.3e}  tol={c['tolerance']:.3e}"
        yield f"overall: {'PASS' if report['overall'] else 'FAIL'}"

    _emit(report, args.format, lines)
    return 0 if report["overall"] else 1


def _model_from_flag(name: str) -> mdl.Model:
    for model in mdl.Model:
        if name == model.cli_name:
            return model
    raise ValueError(f"unknown model {name!r}; expected one of "
                     f"{[m.cli_name for m in mdl.Model]}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperquadric",
        description="Desk-scale numerical model of the complex hyperbolic quadric "
                    "and its contact real hypersurfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_r=False, with_model=False, m_default=3):
        p.add_argument("--m", type=int, default=m_default, help="complex dimension (>= 3)")
        p.add_argument("--format", choices=("table", "json"), default="table")
        if with_model:
            p.add_argument("--model", default="quadric-tube",
                           choices=[m.cli_name for m in mdl.Model])
        if with_r:
            p.add_argument("--r", type=float, default=None,
                           help="tube radius (ignored for the horosphere)")

    p = sub.add_parser("table", help="principal curvature table of a model")
    common(p, with_r=True, with_model=True)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("classify", help="classify a contact constant k")
    common(p)
    p.add_argument("--k", type=float, required=True, help="contact constant (> 0)")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("decompose", help="singular decomposition of a unit tangent vector")
    common(p, m_default=None)  # m inferred from the vector; flag cross-checks
    p.add_argument("vector", help="JSON array of m [re, im] pairs (complex view)")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("oracle", help="ODE tube table next to the closed form")
    common(p, with_r=True, with_model=True)
    p.add_argument("--step", type=float, default=1e-4, help="RK4 step size")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("verify", help="run an invariant suite")
    common(p)
    p.add_argument("--suite", default="all", help=f"one of {sorted(SUITES) + ['all']}")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=None,
                   help="override every check tolerance with one value")
    p.add_argument("--step", type=float, default=1e-4, help="RK4 step size")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "model", None) is not None:
            model = _model_from_flag(args.model)
            if model.has_radius and getattr(args, "r", None) is None:
                raise ValueError(f"--r is required for model {args.model}")
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
