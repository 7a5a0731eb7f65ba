"""Geometry of the complex hyperbolic quadric at the origin.

Tangent vectors are the off-diagonal blocks of the Cartan m-part: a real
2 x m block B, or equivalently the complex m-vector

    w = B[0] + i B[1].

Under this identification the metric is the Euclidean block dot product and
the ambient structures act as

    J:        w -> -i w            (adjoint action of the central rotation j)
    A_theta:  w -> e^{i theta} conj(w)

The circle {A_theta} consists of the real structures (conjugations) of the
tangent space: involutive isometries anticommuting with J.  Each A_theta
splits the tangent space into the totally real eigenspaces V(A) (fixed
vectors, e^{i theta/2} R^m) and J V(A).

Every unit vector Z decomposes as Z = cos(t) X + sin(t) J Y with X, Y
orthonormal in some V(A) and t in [0, pi/4]; t = 0 gives the principal
vectors, t = pi/4 the isotropic ones.  The decomposition is recovered here
from the complex bilinear square q = sum_k w_k^2, whose modulus is
cos(2t) and whose argument is the conjugation angle.

The curvature tensor is the nine-term combination of g, J and any A of the
circle (the A-terms pairwise combine to a choice-independent value), and is
cross-checked against the iterated-bracket form computed in the matrix
algebra, see :func:`curvature_oracle`.

Everything in this module is a pure function over immutable values; random
sampling lives in :mod:`hyperquadric.oracles`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .lie import Context, GroupElement, LieElement, ad, bracket, exp, group_inverse

# Action of J = Ad(j) on the complex view w = row1 + i row2.  The sign is
# forced by the matrix computation (j rotates the first two coordinates by
# -pi/2 under this identification) and is covered by a regression test.
J_COMPLEX_FACTOR = -1j

_SQRT2 = np.sqrt(2.0)

# Singular-decomposition thresholds: t within EPS_T of an endpoint counts as
# principal/isotropic; |q| below Q_CUTOFF leaves the angle undefined.
# EPS_T must sit above ~3e-8: arccos(|q|) near |q| = 1 turns roundoff in q
# into a computed t of that size for exactly-principal inputs, and those
# must land in the principal branch or the Y-leg normalizes pure noise.
EPS_T = 1e-7
Q_CUTOFF = 1e-10


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Tangent vector at the origin, stored as the real 2 x m block."""

    ctx: Context
    block: np.ndarray

    @property
    def m(self) -> int:
        return self.ctx.m

    @property
    def w(self) -> np.ndarray:
        """Complex view w = row1 + i row2."""
        return self.block[0] + 1j * self.block[1]

    def coords(self) -> np.ndarray:
        """Real coordinates (row1, row2) as a flat 2m-vector."""
        return self.block.ravel().copy()

    def norm(self) -> float:
        return float(np.linalg.norm(self.block))

    def unit(self) -> "TangentVector":
        n = self.norm()
        if n < 1e-14:
            raise ValueError("cannot normalize a (near-)zero tangent vector")
        return TangentVector(self.ctx, self.block / n)

    def __add__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.ctx, self.block + other.block)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        return TangentVector(self.ctx, self.block - other.block)

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.ctx, -self.block)

    def __mul__(self, c: float) -> "TangentVector":
        return TangentVector(self.ctx, c * self.block)

    __rmul__ = __mul__


def tangent_from_complex(ctx: Context, w: np.ndarray) -> TangentVector:
    w = np.asarray(w, dtype=complex)
    if w.shape != (ctx.m,):
        raise ValueError(f"expected a complex vector of length {ctx.m}, got shape {w.shape}")
    return TangentVector(ctx, np.vstack([w.real, w.imag]))


def standard_basis(ctx: Context) -> list[TangentVector]:
    """Orthonormal coordinate basis: e_1..e_m (real) then i e_1..i e_m."""
    out = []
    for row in (0, 1):
        for k in range(ctx.m):
            b = np.zeros((2, ctx.m))
            b[row, k] = 1.0
            out.append(TangentVector(ctx, b))
    return out


def basis_vector(ctx: Context, k: int, imaginary: bool = False) -> TangentVector:
    b = np.zeros((2, ctx.m))
    b[1 if imaginary else 0, k] = 1.0
    return TangentVector(ctx, b)


def to_lie(x: TangentVector, scale: float = 1.0) -> LieElement:
    """Embed the block as the off-diagonal m-part with X21 = X12^t."""
    n = x.ctx.n
    mat = np.zeros((n, n))
    mat[:2, 2:] = scale * x.block
    mat[2:, :2] = scale * x.block.T
    return LieElement(x.ctx, mat)


def tangent_from_lie(x: LieElement, scale: float = 1.0) -> TangentVector:
    """Read the X12 block of an m-part element back as a tangent vector."""
    return TangentVector(x.ctx, scale * x.mat[:2, 2:].copy())


def metric(x: TangentVector, y: TangentVector) -> float:
    """Riemannian inner product: the block dot product.

    Equals (1/2) tr(Y^t X) on the matrix embeddings and Re<w_x, w_y> in the
    complex view.  The normalization makes real coordinate vectors unit.
    """
    if x.ctx.m != y.ctx.m:
        raise ValueError(f"dimension mismatch: m={x.ctx.m} vs m={y.ctx.m}")
    return float(np.dot(x.block.ravel(), y.block.ravel()))


def complex_structure(x: TangentVector) -> TangentVector:
    """J X = Ad(j) X; multiplication by J_COMPLEX_FACTOR on the complex view."""
    b = x.block
    return TangentVector(x.ctx, np.vstack([b[1], -b[0]]))


@dataclass(frozen=True)
class Conjugation:
    """Element A_theta of the circle of real structures."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * np.pi))


def conjugation_apply(a: Conjugation, x: TangentVector) -> TangentVector:
    """A_theta X: complex view w -> e^{i theta} conj(w).

    Involutive, isometric, and anticommutes with J.  For theta = 0 this is
    the adjoint action of the reflection a0.
    """
    return tangent_from_complex(x.ctx, np.exp(1j * a.theta) * np.conj(x.w))


def v_space_basis(ctx: Context, a: Conjugation) -> tuple[list[TangentVector], list[TangentVector]]:
    """Orthonormal bases of the eigenspaces V(A) = e^{i theta/2} R^m and J V(A)."""
    phase = np.exp(0.5j * a.theta)
    plus = [tangent_from_complex(ctx, phase * np.eye(ctx.m)[k]) for k in range(ctx.m)]
    minus = [complex_structure(v) for v in plus]
    return plus, minus


def curvature(x: TangentVector, y: TangentVector, z: TangentVector,
              conj: Conjugation | None = None) -> TangentVector:
    """Curvature tensor R(X, Y)Z via the nine-term g/J/A combination.

    The conjugation defaults to A_0; the result is independent of the
    choice because the A-terms combine pairwise invariantly (tested).
    """
    a = conj if conj is not None else Conjugation(0.0)
    jx, jy, jz = complex_structure(x), complex_structure(y), complex_structure(z)
    ax = conjugation_apply(a, x)
    ay = conjugation_apply(a, y)
    jax, jay = complex_structure(ax), complex_structure(ay)
    return (-metric(y, z) * x + metric(x, z) * y
            - metric(jy, z) * jx + metric(jx, z) * jy + 2.0 * metric(jx, y) * jz
            - metric(ay, z) * ax + metric(ax, z) * ay
            - metric(jay, z) * jax + metric(jax, z) * jay)


def curvature_oracle(x: TangentVector, y: TangentVector, z: TangentVector) -> TangentVector:
    """Curvature as the iterated bracket -[[X, Y], Z] in the matrix algebra.

    The embedding is rescaled by sqrt(2) so that it is an isometry onto the
    trace-form normalization of the m-part (tr(XY) = 2 g on unit-scale
    embeddings); with the plain block embedding the bracket would come out
    at half the metric normalization used by the nine-term tensor.
    Equivalently this evaluates -2 [[X, Y], Z] on unit-scale embeddings.
    """
    xe = to_lie(x, _SQRT2)
    ye = to_lie(y, _SQRT2)
    ze = to_lie(z, _SQRT2)
    nested = bracket(bracket(xe, ye), ze)
    return tangent_from_lie(nested, scale=-1.0 / _SQRT2)


class VectorKind(enum.Enum):
    PRINCIPAL = "principal"
    ISOTROPIC = "isotropic"
    REGULAR = "regular"


@dataclass(frozen=True, eq=False)
class SingularDecomposition:
    """Decomposition Z = cos(t) X + sin(t) J Y with X, Y in V(A_theta).

    For principal vectors (t ~ 0) Y is a deterministic completion; for
    isotropic vectors (q = 0) theta is set to 0 by convention and
    ``theta_defined`` is False.
    """

    t: float
    theta: float
    x: TangentVector
    y: TangentVector
    theta_defined: bool = True

    @property
    def conj(self) -> Conjugation:
        return Conjugation(self.theta)

    def reconstruct(self) -> TangentVector:
        return float(np.cos(self.t)) * self.x + float(np.sin(self.t)) * complex_structure(self.y)

    @property
    def kind(self) -> VectorKind:
        if self.t <= EPS_T:
            return VectorKind.PRINCIPAL
        if abs(self.t - np.pi / 4.0) <= EPS_T:
            return VectorKind.ISOTROPIC
        return VectorKind.REGULAR


def _real_completion(xreal: np.ndarray) -> np.ndarray:
    """Lowest-index Gram-Schmidt completion of a unit vector in R^m."""
    m = xreal.shape[0]
    for k in range(m):
        cand = np.zeros(m)
        cand[k] = 1.0
        cand -= np.dot(cand, xreal) * xreal
        nrm = np.linalg.norm(cand)
        if nrm > 0.5:
            return cand / nrm
    raise RuntimeError("completion failed; input not unit?")


def singular_decompose(z: TangentVector) -> SingularDecomposition:
    """Recover (t, A_theta, X, Y) for a unit tangent vector.

    Uses the complex bilinear square q = sum w_k^2: |q| = cos(2t) exactly,
    arg(q) = theta when defined.  Validated by the reconstruction
    invariant, not assumed.
    """
    if abs(z.norm() - 1.0) > 1e-10:
        raise ValueError(f"singular decomposition requires a unit vector, |Z| = {z.norm()!r}")
    w = z.w
    q = complex(np.sum(w * w))
    t = 0.5 * np.arccos(np.clip(abs(q), 0.0, 1.0))
    theta_defined = abs(q) > Q_CUTOFF
    theta = float(np.angle(q)) % (2.0 * np.pi) if theta_defined else 0.0
    half = np.exp(-0.5j * theta)
    u = half * w
    xreal = u.real / np.cos(t)
    xreal = xreal / np.linalg.norm(xreal)
    if t <= EPS_T:
        t = 0.0  # snap: the sin(t) leg of a principal vector is pure noise
        yreal = _real_completion(xreal)
    else:
        yreal = -u.imag / np.sin(t)
        yreal = yreal / np.linalg.norm(yreal)
    phase = np.exp(0.5j * theta)
    return SingularDecomposition(
        t=float(t), theta=theta,
        x=tangent_from_complex(z.ctx, phase * xreal),
        y=tangent_from_complex(z.ctx, phase * yreal),
        theta_defined=theta_defined,
    )


def classify_vector(z: TangentVector) -> VectorKind:
    """Principal (t ~ 0), isotropic (t ~ pi/4) or regular unit vector."""
    return singular_decompose(z).kind


def orthonormal_complement(ctx: Context, fixed: list[TangentVector],
                           count: int | None = None) -> list[TangentVector]:
    """Deterministic orthonormal basis of the complement of ``fixed``.

    Gram-Schmidt over the standard coordinate basis, lowest index first.
    """
    out: list[TangentVector] = []
    want = count if count is not None else 2 * ctx.m - len(fixed)
    for cand in standard_basis(ctx):
        v = cand
        for u in list(fixed) + out:
            v = v - metric(v, u) * u
        nrm = v.norm()
        if nrm > 1e-8:
            out.append((1.0 / nrm) * v)
            if len(out) == want:
                return out
    raise RuntimeError("could not complete an orthonormal basis (fixed set not orthonormal?)")


# ---------------------------------------------------------------------------
# Points, geodesics, parallel transport
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Point:
    """Point of the quotient, as the conjugation-orbit matrix g s g^{-1}.

    This resolves coset equality without bookkeeping: the isotropy group is
    exactly the stabilizer of s, and the origin is s itself.
    """

    ctx: Context
    mat: np.ndarray


def origin(ctx: Context) -> Point:
    return Point(ctx, ctx.s.copy())


def points_close(p: Point, q: Point, tol: float = 1e-10) -> bool:
    return bool(np.linalg.norm(p.mat - q.mat) <= tol)


def geodesic_point(x: TangentVector, t: float) -> Point:
    """Point at parameter t of the geodesic from the origin with direction X."""
    g = exp(to_lie(x), t)
    return Point(x.ctx, g.mat @ x.ctx.s @ group_inverse(g))


def conj_group_element(ctx: Context, a: Conjugation) -> np.ndarray:
    """Group representative of A_theta: the rotation-by-theta times a0.

    Lies in O(2) x SO(m) (determinant -1 block), is s-orthogonal, and its
    adjoint action on the m-part is exactly ``conjugation_apply``.
    """
    c, s = np.cos(a.theta), np.sin(a.theta)
    g = np.eye(ctx.n)
    g[0, 0] = c
    g[0, 1] = s
    g[1, 0] = s
    g[1, 1] = -c
    return g


@dataclass(frozen=True, eq=False)
class TransportedFrame:
    """Parallel transport along a geodesic, realized by its transvection.

    In transvection-trivialized coordinates parallel transport is the
    identity; this object carries the bookkeeping needed to interpret
    those coordinates at the endpoint: the group element, the endpoint,
    and the transported metric/complex structure/conjugations, each
    expressed on ambient matrix representatives.
    """

    ctx: Context
    g: GroupElement
    point: Point

    def apply(self, x: TangentVector) -> LieElement:
        """Ambient representative of the transported vector: Ad(g) X."""
        return ad(self.g, to_lie(x))

    def pull_back(self, u: LieElement) -> TangentVector:
        """Coordinates of an ambient representative back at the origin."""
        ginv = GroupElement(self.ctx, group_inverse(self.g))
        return tangent_from_lie(ad(ginv, u))

    def metric_at(self, u: LieElement, v: LieElement) -> float:
        """Transported metric: (1/2) tr(UV) on ambient representatives.

        The trace form is conjugation-invariant and equals the block metric
        on the m-part, so this is the metric at the endpoint.
        """
        return 0.5 * float(np.trace(u.mat @ v.mat))

    def complex_structure_at(self, u: LieElement) -> LieElement:
        """J at the endpoint: adjoint action of g j g^{-1} (point-intrinsic)."""
        jmat = self.g.mat @ self.ctx.j @ group_inverse(self.g)
        return LieElement(self.ctx, jmat @ u.mat @ np.linalg.inv(jmat))

    def conjugation_at(self, a: Conjugation, u: LieElement) -> LieElement:
        """Transported real structure: adjoint action of g a_theta g^{-1}."""
        amat = self.g.mat @ conj_group_element(self.ctx, a) @ group_inverse(self.g)
        return LieElement(self.ctx, amat @ u.mat @ np.linalg.inv(amat))

    def coordinate_matrix(self) -> np.ndarray:
        """Transport in trivialized coordinates (identity up to roundoff)."""
        basis = standard_basis(self.ctx)
        cols = [self.pull_back(self.apply(b)).coords() for b in basis]
        return np.array(cols).T


def transport_frame(x: TangentVector, t: float) -> TransportedFrame:
    """Parallel transport from the origin to the geodesic point at t."""
    g = exp(to_lie(x), t)
    return TransportedFrame(ctx=x.ctx, g=g,
                            point=Point(x.ctx, g.mat @ x.ctx.s @ group_inverse(g)))


def isotropy_rotate(x: TangentVector, phase: float, rotation: np.ndarray) -> TangentVector:
    """Isotropy action on tangent vectors: w -> e^{i phase} (O w).

    ``rotation`` is an m x m real orthogonal matrix; phase rotates the
    complex line.  Conjugation angles transform as theta -> theta + 2 phase.
    """
    return tangent_from_complex(x.ctx, np.exp(1j * phase) * (rotation @ x.w))
