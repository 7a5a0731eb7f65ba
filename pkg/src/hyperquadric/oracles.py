"""Independent brute-force oracles: ODE Jacobi fields, transport checks, sampling.

Everything here deliberately avoids the closed forms it is meant to check:
tube shape operators are re-derived by integrating the matrix Jacobi
equation Z'' = -R_N Z from the focal submanifold outward (fixed-step RK4,
so runs are bit-reproducible), and parallel transport is probed by finite
differences through the conjugation-orbit embedding of the quotient.

Random sampling is centralized in :class:`SampleStream`: PCG64 keyed by
(seed, key..., counter) through numpy's SeedSequence, so identical
seed+counter yields identical samples on every platform, and parallel
suites can derive disjoint child streams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm as _expm

from . import geometry as geo
from .geometry import Conjugation, TangentVector, tangent_from_complex, to_lie
from .lie import Context, make_context, project_to_algebra
from .models import (
    EigenspaceLabel,
    Model,
    PrincipalCurvatureTable,
    TableEntry,
    build_frame,
    normal_jacobi_on_basis,
)


@dataclass(frozen=True)
class OdeConfig:
    """Fixed-step RK4 configuration."""

    step: float = 1e-4
    max_t: float = 4.0
    method: str = "rk4"

    def __post_init__(self):
        if self.step <= 0.0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.max_t < 0.0:
            raise ValueError(f"max_t must be non-negative, got {self.max_t}")
        if self.method != "rk4":
            raise ValueError(f"unsupported method {self.method!r}")


@dataclass
class SampleStream:
    """Deterministic sample source (PCG64 keyed by seed, key and counter)."""

    seed: int
    key: tuple[int, ...] = ()
    counter: int = 0

    def _rng(self) -> np.random.Generator:
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(*self.key, self.counter))
        self.counter += 1
        return np.random.Generator(np.random.PCG64(seq))

    def child(self, tag: int) -> "SampleStream":
        """Independent derived stream; used to keep parallel suites disjoint."""
        return SampleStream(self.seed, (*self.key, tag))

    def normal(self, size) -> np.ndarray:
        return self._rng().standard_normal(size)

    def uniform(self, lo: float, hi: float) -> float:
        return float(self._rng().uniform(lo, hi))

    def angle(self) -> float:
        return self.uniform(0.0, 2.0 * np.pi)

    def real_unit(self, m: int) -> np.ndarray:
        v = self.normal(m)
        return v / np.linalg.norm(v)

    def orthonormal_pair(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        x = self.real_unit(m)
        y = self.normal(m)
        y -= np.dot(y, x) * x
        return x, y / np.linalg.norm(y)

    def rotation(self, m: int) -> np.ndarray:
        """Haar-ish random rotation in SO(m) (QR with sign fix)."""
        q, r = np.linalg.qr(self.normal((m, m)))
        q = q * np.sign(np.diag(r))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return q

    def algebra_element(self, ctx: Context, scale: float = 1.0):
        return project_to_algebra(ctx, scale * self.normal((ctx.n, ctx.n)))


def sample_unit_tangent(stream: SampleStream, ctx: Context,
                        constraint: str = "any") -> TangentVector:
    """Deterministic unit tangent vector of the requested singular type.

    principal: random real unit vector rotated by a random half-angle;
    isotropic: (x + i y)/sqrt(2) with x, y orthonormal real;
    regular:   prescribed t drawn away from both endpoints;
    any:       Gaussian direction (almost surely regular).
    """
    m = ctx.m
    if constraint == "any":
        w = stream.normal(m) + 1j * stream.normal(m)
        w /= np.linalg.norm(w)
        return tangent_from_complex(ctx, w)
    if constraint == "principal":
        x = stream.real_unit(m)
        return tangent_from_complex(ctx, np.exp(0.5j * stream.angle()) * x)
    if constraint == "isotropic":
        x, y = stream.orthonormal_pair(m)
        return tangent_from_complex(ctx, (x + 1j * y) / np.sqrt(2.0))
    if constraint == "regular":
        eps = 0.05
        t = stream.uniform(eps, np.pi / 4.0 - eps)
        theta = stream.angle()
        x, y = stream.orthonormal_pair(m)
        w = np.exp(0.5j * theta) * (np.cos(t) * x - 1j * np.sin(t) * y)
        return tangent_from_complex(ctx, w)
    raise ValueError(f"unknown constraint {constraint!r}")


# ---------------------------------------------------------------------------
# Jacobi-field integration
# ---------------------------------------------------------------------------

def _rk4(deriv, y: np.ndarray, span: float, step: float) -> np.ndarray:
    nfull, rem = divmod(abs(span), step)
    steps = [step] * int(round(nfull))
    if rem > 1e-13:
        steps.append(rem)
    for h in steps:
        k1 = deriv(y)
        k2 = deriv(y + 0.5 * h * k1)
        k3 = deriv(y + 0.5 * h * k2)
        k4 = deriv(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(y)):
        raise FloatingPointError("ODE state became non-finite")
    return y


def integrate_jacobi(rn: np.ndarray, x0: np.ndarray, x0prime: np.ndarray,
                     r: float, cfg: OdeConfig | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Integrate Z'' = -R_N Z in a parallel frame with RK4.

    ``rn`` is the symmetric normal Jacobi operator; the state may be a
    vector or a matrix of stacked initial conditions.  Global error is
    O(step^4).
    """
    cfg = cfg or OdeConfig()
    rn = np.atleast_2d(np.asarray(rn, dtype=float))
    if np.abs(rn - rn.T).max() > 1e-9:
        raise ValueError("normal Jacobi operator must be symmetric")
    if r > cfg.max_t:
        raise ValueError(f"r = {r} exceeds cfg.max_t = {cfg.max_t}")
    z0 = np.atleast_1d(np.asarray(x0, dtype=float))
    zp0 = np.atleast_1d(np.asarray(x0prime, dtype=float))
    y = np.stack([z0, zp0])

    def deriv(state):
        return np.stack([state[1], -(rn @ state[0])])

    out = _rk4(deriv, y, r, cfg.step)
    return out[0], out[1]


def _focal_setup(model: Model, m: int) -> tuple[TangentVector, list[TangentVector], int]:
    """Unit normal of the focal submanifold plus an adapted basis of its perp.

    Basis ordering: directions tangent to the focal submanifold first, then
    the remaining normal directions; returns the count of tangent ones.
    """
    c = make_context(m)
    if model is Model.QUADRIC_TUBE:
        # Focal set: totally geodesic complex hypersurface; eta in its normal
        # complex line, tangent space spanned by e_k, J e_k (k >= 2).
        eta = geo.basis_vector(c, 0)
        tangent = []
        for k in range(1, m):
            ek = geo.basis_vector(c, k)
            tangent += [ek, geo.complex_structure(ek)]
        rest = [geo.complex_structure(eta)]
    elif model is Model.REALFORM_TUBE:
        # Focal set: totally real form with tangent space the real vectors;
        # eta = J e_1 in the purely imaginary normal space.
        eta = geo.complex_structure(geo.basis_vector(c, 0))
        tangent = [geo.basis_vector(c, k) for k in range(m)]
        rest = [geo.complex_structure(geo.basis_vector(c, k)) for k in range(1, m)]
    else:
        raise ValueError("the horosphere has no focal submanifold to start from")
    return eta, tangent + rest, len(tangent)


def tube_shape_from_ode(model: Model, r: float, m: int,
                        cfg: OdeConfig | None = None) -> PrincipalCurvatureTable:
    """Tube principal curvatures from Jacobi fields shot off the focal set.

    Matrix initial conditions Z(0) = projector on the focal tangent,
    Z'(0) = projector on the focal normal directions (the totally geodesic
    focal set contributes no shape term).  The tube shape operator at
    radius r with the inward-normal sign convention is Z'(r) Z(r)^{-1};
    its clustered spectrum is returned as a table labeled by multiplicity
    (the size-one cluster is the Reeb value, the near-zero cluster the
    flat block).
    """
    if r <= 0.0:
        raise ValueError(f"tube radius must be positive, got {r}")
    cfg = cfg or OdeConfig()
    eta, basis, ntan = _focal_setup(model, m)
    rn = normal_jacobi_on_basis(eta, basis)
    d = len(basis)
    z0 = np.diag([1.0] * ntan + [0.0] * (d - ntan))
    zp0 = np.diag([0.0] * ntan + [1.0] * (d - ntan))
    z, zp = integrate_jacobi(rn, z0, zp0, r, cfg)
    smin = np.linalg.svd(z, compute_uv=False).min()
    if smin < 1e-8:
        raise ValueError(f"radius {r} is too close to a focal point (|Z| ~ {smin:.2e})")
    shape = zp @ np.linalg.inv(z)
    shape = 0.5 * (shape + shape.T)
    vals = np.linalg.eigvalsh(shape)
    clusters: list[list[float]] = [[float(vals[0])]]
    for v in vals[1:]:
        if v - clusters[-1][-1] < 1e-4:
            clusters[-1].append(float(v))
        else:
            clusters.append([float(v)])
    if len(clusters) != 3:
        raise ValueError(f"expected 3 principal-curvature clusters, got {len(clusters)}")
    reeb = next(c for c in clusters if len(c) == 1)
    others = [c for c in clusters if c is not reeb]
    flat = min(others, key=lambda c: abs(np.mean(c)))
    vpart = next(c for c in others if c is not flat)
    return PrincipalCurvatureTable(m=m, entries=(
        TableEntry(float(np.mean(flat)), len(flat), EigenspaceLabel.JV_MINUS_N),
        TableEntry(float(np.mean(vpart)), len(vpart), EigenspaceLabel.V_MINUS_N),
        TableEntry(float(np.mean(reeb)), 1, EigenspaceLabel.REEB_LINE),
    ))


def focal_shape_from_tube_ode(model: Model, r: float, m: int,
                              cfg: OdeConfig | None = None) -> tuple[int, float]:
    """Reverse direction: shoot Jacobi fields from the tube to its focal set.

    Starts with Z(0) = I, Z'(0) = -S (inward normal convention) on a model
    frame basis and integrates to the focal distance.  Returns the rank
    deficiency of Z(r) (the kernel of the displacement map) and the norm of
    the induced focal shape operator on the surviving directions, which
    should vanish: the focal submanifolds are totally geodesic.  Together
    with :func:`tube_shape_from_ode` this closes the tube -> focal -> tube
    round-trip.
    """
    cfg = cfg or OdeConfig()
    frame = build_frame(model, r, m)
    basis = list(frame.basis)
    rn = normal_jacobi_on_basis(frame.normal, basis)
    d = len(basis)
    z, zp = integrate_jacobi(rn, np.eye(d), -frame.shape, r, cfg)
    _, sig, vt = np.linalg.svd(z)
    tol = 1e-6 * max(1.0, sig.max())
    kernel = int(np.sum(sig <= tol))
    keep = sig > tol
    vr = vt.T[:, keep]
    focal_shape = (zp @ vr) / sig[keep]
    return kernel, float(np.linalg.norm(focal_shape, 2))


# ---------------------------------------------------------------------------
# Parallel-transport finite-difference checks
# ---------------------------------------------------------------------------

def _embedded_field(x: TangentVector, v: TangentVector, tau: float) -> np.ndarray:
    """Conjugation-orbit image of the transported vector v at parameter tau.

    The quotient embeds as p -> g s g^{-1}; a tangent vector u at the
    origin maps to 2 u s, and transvection transport carries it to
    g (2 u s) g^{-1} along the geodesic.
    """
    ctx = x.ctx
    gmat = _expm(tau * to_lie(x).mat)
    core = 2.0 * to_lie(v).mat @ ctx.s
    return gmat @ core @ np.linalg.inv(gmat)


def transport_fd_residuals(x: TangentVector, t: float,
                           cfg: OdeConfig | None = None) -> dict[str, float]:
    """Component residuals of the parallel-transport contracts along one geodesic.

    parallel:    tangential part of the finite-difference derivative of the
                 embedded transported field (zero iff transport is parallel;
                 the trace form has constant Gram matrix -8 I on the
                 embedded tangent frames, which makes the projection cheap);
    metric:      drift of the trace-form inner product of two transported
                 vectors from its initial metric value;
    complex:     transported J versus J applied at the endpoint (adjoint
                 action of the point's central rotation);
    conjugation: the derivative of a rotating conjugation section stays in
                 the direction J A (the fiber tangent of the structure
                 circle), in trivialized coordinates.
    """
    cfg = cfg or OdeConfig()
    h = cfg.step
    ctx = x.ctx
    v1 = geo.basis_vector(ctx, 0)
    v2 = geo.complex_structure(geo.basis_vector(ctx, 1))
    taus = np.linspace(0.0, t, 5) if t > 0 else np.array([0.0])
    sbasis = geo.standard_basis(ctx)
    g12 = geo.metric(v1, v2)

    res_par = 0.0
    res_met = 0.0
    res_cx = 0.0
    for tau in taus:
        gmat = _expm(tau * to_lie(x).mat)
        ginv = np.linalg.inv(gmat)
        frame_mats = [gmat @ (2.0 * to_lie(b).mat @ ctx.s) @ ginv for b in sbasis]
        for v in (v1, v2):
            wplus = _embedded_field(x, v, tau + h)
            wminus = _embedded_field(x, v, tau - h)
            wdot = (wplus - wminus) / (2.0 * h)
            coeff = np.array([np.trace(e @ wdot) / -8.0 for e in frame_mats])
            res_par = max(res_par, float(np.linalg.norm(coeff)))
        w1 = gmat @ (2.0 * to_lie(v1).mat @ ctx.s) @ ginv
        w2 = gmat @ (2.0 * to_lie(v2).mat @ ctx.s) @ ginv
        res_met = max(res_met, abs(float(np.trace(w1 @ w2)) / -8.0 - g12))
        jp = gmat @ ctx.j @ ginv
        jv_direct = gmat @ (2.0 * to_lie(geo.complex_structure(v1)).mat @ ctx.s) @ ginv
        res_cx = max(res_cx, float(np.abs(jp @ w1 @ np.linalg.inv(jp) - jv_direct).max()))

    # Rotating conjugation section A(tau) = A_{tau} in parallel coordinates:
    # its derivative must be proportional to J A(tau).
    res_conj = 0.0
    jmat2m = _operator_matrix(ctx, geo.complex_structure)
    for tau in taus:
        aplus = _conj_matrix(ctx, tau + h)
        aminus = _conj_matrix(ctx, tau - h)
        adot = (aplus - aminus) / (2.0 * h)
        ja = jmat2m @ _conj_matrix(ctx, tau)
        coeff = float(np.sum(adot * ja) / np.sum(ja * ja))
        res_conj = max(res_conj, float(np.abs(adot - coeff * ja).max()))
    return {"parallel": res_par, "metric": res_met,
            "complex": res_cx, "conjugation": res_conj}


def _operator_matrix(ctx: Context, op) -> np.ndarray:
    basis = geo.standard_basis(ctx)
    return np.array([op(b).coords() for b in basis]).T


def _conj_matrix(ctx: Context, theta: float) -> np.ndarray:
    a = Conjugation(theta)
    return _operator_matrix(ctx, lambda b: geo.conjugation_apply(a, b))


def transport_fd_check(x: TangentVector, t: float,
                       cfg: OdeConfig | None = None) -> float:
    """Worst residual over all parallel-transport contracts; 0 at t = 0."""
    if t == 0.0:
        return 0.0
    return max(transport_fd_residuals(x, t, cfg).values())
