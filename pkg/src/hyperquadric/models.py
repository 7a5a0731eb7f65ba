"""The three model contact hypersurfaces and their classification data.

Every contact hypersurface with constant mean curvature in the quadric is
congruent to one of three homogeneous models, distinguished by the contact
constant k (with the inward-pointing normal, so k > 0):

    k < sqrt(2):  tube of radius r around the totally geodesic complex
                  hypersurface quadric, k = sqrt(2) tanh(sqrt(2) r)
    k = sqrt(2):  horosphere (no focal set)
    k > sqrt(2):  tube of radius r around the totally geodesic real
                  hyperbolic form, k = sqrt(2) coth(sqrt(2) r)

Each model has three constant principal curvatures alpha (Reeb direction),
mu (the V(A)-part of the complex subbundle) and lambda = 0 (its J-image),
with alpha * mu = 2 and k = mu.  The tables here are closed forms; the ODE
route that re-derives them from Jacobi fields lives in
:mod:`hyperquadric.oracles`.

The sign convention follows the inward normal, which makes all tabulated
curvatures positive.  The curvature-derived normal Jacobi operator has
eigenvalues {0, -2}; a sign-flipped variant with eigenvalues {0, +2} is
kept here too (``normal_jacobi_opposite``) so verification reports can
flag convention mismatches explicitly instead of hiding them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geometry import (
    Conjugation,
    TangentVector,
    basis_vector,
    complex_structure,
    conjugation_apply,
    curvature,
    isotropy_rotate,
    metric,
    singular_decompose,
)
from .hypersurface import HypersurfaceFrame, frame_basis_for_normal
from .lie import make_context

SQRT2 = float(np.sqrt(2.0))

# Width of the horosphere boundary in k: the trichotomy is discontinuous at
# k = sqrt(2), so an exact-boundary tolerance has to be drawn somewhere.
EPS_K = 1e-9


class Model(enum.Enum):
    """The three model hypersurfaces, named by their classification case."""

    QUADRIC_TUBE = "TubeAroundQuadric"
    HOROSPHERE = "Horosphere"
    REALFORM_TUBE = "TubeAroundRealForm"

    @property
    def cli_name(self) -> str:
        return {"TubeAroundQuadric": "quadric-tube",
                "Horosphere": "horosphere",
                "TubeAroundRealForm": "realform-tube"}[self.value]

    @property
    def has_radius(self) -> bool:
        return self is not Model.HOROSPHERE


class EigenspaceLabel(enum.Enum):
    REEB_LINE = "ReebLine"
    JV_MINUS_N = "JVMinusN"
    V_MINUS_N = "VMinusN"


@dataclass(frozen=True)
class TableEntry:
    value: float
    multiplicity: int
    label: EigenspaceLabel


@dataclass(frozen=True)
class PrincipalCurvatureTable:
    """Principal curvature triples (value, multiplicity, eigenspace label)."""

    m: int
    entries: tuple[TableEntry, ...]

    def __post_init__(self):
        mults = sum(e.multiplicity for e in self.entries)
        if mults != 2 * self.m - 1:
            raise ValueError(f"multiplicities sum to {mults}, expected {2 * self.m - 1}")
        reeb = [e for e in self.entries if e.label is EigenspaceLabel.REEB_LINE]
        if len(reeb) != 1 or reeb[0].multiplicity != 1:
            raise ValueError("expected exactly one Reeb-line entry of multiplicity 1")
        if not all(np.isfinite(e.value) for e in self.entries):
            raise ValueError("non-finite principal curvature")

    def _value(self, label: EigenspaceLabel) -> float:
        return next(e.value for e in self.entries if e.label is label)

    @property
    def alpha(self) -> float:
        return self._value(EigenspaceLabel.REEB_LINE)

    @property
    def lam(self) -> float:
        return self._value(EigenspaceLabel.JV_MINUS_N)

    @property
    def mu(self) -> float:
        return self._value(EigenspaceLabel.V_MINUS_N)

    @property
    def contact_k(self) -> float:
        return self.lam + self.mu

    @property
    def mean_curvature(self) -> float:
        return float(sum(e.value * e.multiplicity for e in self.entries))

    def sorted_values(self) -> np.ndarray:
        """All 2m-1 principal curvatures with multiplicity, ascending."""
        vals: list[float] = []
        for e in self.entries:
            vals.extend([e.value] * e.multiplicity)
        return np.sort(np.array(vals))


@dataclass(frozen=True)
class ClassificationCase:
    """Outcome of the contact-constant trichotomy."""

    case: Model
    r: float | None
    alpha: float
    lam: float
    mu: float


def _check_tube_args(model: Model, r: float | None, m: int) -> None:
    if m < 3:
        raise ValueError(f"dimension parameter must be >= 3, got {m}")
    if model.has_radius and (r is None or r <= 0.0):
        raise ValueError(f"{model.cli_name} requires a radius r > 0, got {r}")


def tube_table(model: Model, r: float | None, m: int) -> PrincipalCurvatureTable:
    """Closed-form principal curvature table of a model hypersurface.

    Quadric tube:   alpha = sqrt(2) coth(sqrt(2) r),  mu = sqrt(2) tanh(sqrt(2) r)
    Real-form tube: alpha = sqrt(2) tanh(sqrt(2) r),  mu = sqrt(2) coth(sqrt(2) r)
    Horosphere:     alpha = mu = sqrt(2)

    lambda = 0 with multiplicity m-1 in every case, and alpha * mu = 2.
    """
    _check_tube_args(model, r, m)
    if model is Model.QUADRIC_TUBE:
        alpha = SQRT2 / np.tanh(SQRT2 * r)
        mu = SQRT2 * np.tanh(SQRT2 * r)
    elif model is Model.REALFORM_TUBE:
        alpha = SQRT2 * np.tanh(SQRT2 * r)
        mu = SQRT2 / np.tanh(SQRT2 * r)
    else:
        alpha = mu = SQRT2
    return PrincipalCurvatureTable(m=m, entries=(
        TableEntry(0.0, m - 1, EigenspaceLabel.JV_MINUS_N),
        TableEntry(float(mu), m - 1, EigenspaceLabel.V_MINUS_N),
        TableEntry(float(alpha), 1, EigenspaceLabel.REEB_LINE),
    ))


def tube_contact_constant(model: Model, r: float | None) -> float:
    """Contact constant k of a model: equal to mu (and to lambda + mu)."""
    _check_tube_args(model, r, 3)
    if model is Model.QUADRIC_TUBE:
        return float(SQRT2 * np.tanh(SQRT2 * r))
    if model is Model.REALFORM_TUBE:
        return float(SQRT2 / np.tanh(SQRT2 * r))
    return SQRT2


def build_frame(model: Model, r: float | None, m: int) -> HypersurfaceFrame:
    """Model hypersurface frame at the canonical point.

    Normal N = e_1 (real, principal).  Basis ordered (J e_2 .. J e_m) for
    the lambda-block, (e_2 .. e_m) for the mu-block, then xi = -J N; the
    shape operator is diagonal with the table values.  The recorded
    conjugation fixes the normal for the quadric tube and the horosphere
    (conj_sign +1) and negates it for the real-form tube (the adapted
    structure there has the normal in J V(A); conj_sign -1, angle pi).
    """
    table = tube_table(model, r, m)
    ctx = make_context(m)
    n = basis_vector(ctx, 0)
    lam_block = [complex_structure(basis_vector(ctx, k)) for k in range(1, m)]
    mu_block = [basis_vector(ctx, k) for k in range(1, m)]
    xi = -complex_structure(n)
    basis = tuple(lam_block + mu_block + [xi])
    shape = np.diag([table.lam] * (m - 1) + [table.mu] * (m - 1) + [table.alpha])
    if model is Model.REALFORM_TUBE:
        conj, sign = Conjugation(np.pi), -1
    else:
        conj, sign = Conjugation(0.0), +1
    return HypersurfaceFrame(normal=n, basis=basis, shape=shape,
                             alpha=table.alpha, k=table.contact_k,
                             conj=conj, conj_sign=sign)


def rotate_frame(frame: HypersurfaceFrame, phase: float,
                 rotation: np.ndarray) -> HypersurfaceFrame:
    """Move a frame by an isotropy element (complex phase + real rotation).

    The shape operator is unchanged in the rotated basis; the adapted
    conjugation angle shifts by twice the phase.
    """
    n = isotropy_rotate(frame.normal, phase, rotation)
    basis = tuple(isotropy_rotate(b, phase, rotation) for b in frame.basis)
    conj = None
    if frame.conj is not None:
        conj = Conjugation(frame.conj.theta + 2.0 * phase)
    return HypersurfaceFrame(normal=n, basis=basis, shape=frame.shape.copy(),
                             alpha=frame.alpha, k=frame.k,
                             conj=conj, conj_sign=frame.conj_sign)


# ---------------------------------------------------------------------------
# Normal Jacobi operator
# ---------------------------------------------------------------------------

def normal_jacobi_on_basis(n: TangentVector,
                           basis: list[TangentVector]) -> np.ndarray:
    """Matrix of Z -> R(Z, N)N on a given orthonormal basis of N-perp."""
    d = len(basis)
    op = np.empty((d, d))
    for jc, bj in enumerate(basis):
        rz = curvature(bj, n, n)
        for ir, bi in enumerate(basis):
            op[ir, jc] = metric(rz, bi)
    return op


def normal_jacobi(n: TangentVector) -> tuple[np.ndarray, np.ndarray]:
    """Normal Jacobi operator on N-perp and its spectrum.

    For a principal unit normal the eigenvalues are 0 (multiplicity m-1,
    on the J-image of the fixed space minus the normal line) and -2
    (multiplicity m, on the rest).
    """
    op = normal_jacobi_on_basis(n, frame_basis_for_normal(n))
    return op, np.linalg.eigvalsh(op)


def normal_jacobi_opposite(n: TangentVector) -> np.ndarray:
    """Sign-flipped variant Z -> Z + AZ - 2 g(Z,N) N + 2 g(Z,JN) JN.

    A is the conjugation adapted to N.  On the tangent space this is the
    exact negative of :func:`normal_jacobi` for a principal normal, so its
    eigenvalues come out as {0, +2}; kept as a guard against sign-convention
    mix-ups (the verify report carries the comparison as an informational
    entry).
    """
    a = singular_decompose(n).conj
    jn = complex_structure(n)
    basis = frame_basis_for_normal(n)
    d = len(basis)
    op = np.empty((d, d))
    for jc, bj in enumerate(basis):
        img = (bj + conjugation_apply(a, bj)
               - 2.0 * metric(bj, n) * n + 2.0 * metric(bj, jn) * jn)
        for ir, bi in enumerate(basis):
            op[ir, jc] = metric(img, bi)
    return op


def jacobi_sign_discrepancy(n: TangentVector) -> float:
    """Max entry of (opposite variant) + (curvature-derived operator).

    Zero means the two published sign conventions are exact negatives of
    each other on the tangent space.
    """
    op, _ = normal_jacobi(n)
    return float(np.abs(normal_jacobi_opposite(n) + op).max())


# ---------------------------------------------------------------------------
# Closed-form Jacobi fields, classification, focal kernels
# ---------------------------------------------------------------------------

class JacobiCase(enum.Enum):
    ZERO = "zero"
    MINUS_TWO = "minus-two"


def jacobi_closed_form(case: JacobiCase, sigma: float, r: float) -> tuple[float, float]:
    """Scalar Jacobi factor Z(r) and derivative Z'(r) per eigenvalue block.

    Initial conditions Z(0) = 1, Z'(0) = -sigma, where sigma is the shape
    eigenvalue of the block with respect to the inward normal (the sign
    that makes the factor vanish exactly at a focal distance).  The
    minus-two block solves Z'' = 2 Z:

        Z(r) = cosh(sqrt(2) r) - (sigma / sqrt(2)) sinh(sqrt(2) r),

    the zero block solves Z'' = 0, i.e. Z(r) = 1 - sigma r.
    """
    if r < 0.0:
        raise ValueError(f"radius must be non-negative, got {r}")
    if case is JacobiCase.MINUS_TWO:
        ch, sh = np.cosh(SQRT2 * r), np.sinh(SQRT2 * r)
        return float(ch - sigma / SQRT2 * sh), float(SQRT2 * sh - sigma * ch)
    return float(1.0 - sigma * r), float(-sigma)


def solve_principal_curvatures(k: float) -> tuple[float, float, float]:
    """Principal curvatures (alpha, lambda, mu) forced by the contact constant.

    One curvature on the complex subbundle must vanish, which pins
    alpha = 2/k, lambda = 0, mu = k; both lambda and mu are verified to be
    roots of the quadratic 2 s^2 - 2 k s + alpha k - 2 = 0.
    """
    if k <= 0.0:
        raise ValueError(f"contact constant must be positive, got {k}")
    alpha, lam, mu = 2.0 / k, 0.0, float(k)
    for root in (lam, mu):
        resid = abs(2.0 * root ** 2 - 2.0 * k * root + alpha * k - 2.0)
        if resid > 1e-12 * max(1.0, k ** 2):
            raise AssertionError(f"quadratic root check failed: residual {resid:.3e}")
    return alpha, lam, mu


def classify(k: float) -> ClassificationCase:
    """Map a contact constant k > 0 to its model hypersurface.

    k below sqrt(2) inverts k = sqrt(2) tanh(sqrt(2) r); above, the coth
    analogue; within EPS_K of sqrt(2) the case is the horosphere, which
    carries no radius.
    """
    alpha, lam, mu = solve_principal_curvatures(k)
    if abs(k - SQRT2) <= EPS_K:
        return ClassificationCase(Model.HOROSPHERE, None, alpha, lam, mu)
    if k < SQRT2:
        r = float(np.arctanh(k / SQRT2) / SQRT2)
        return ClassificationCase(Model.QUADRIC_TUBE, r, alpha, lam, mu)
    r = float(np.arctanh(SQRT2 / k) / SQRT2)
    return ClassificationCase(Model.REALFORM_TUBE, r, alpha, lam, mu)


def focal_map_kernel(case: ClassificationCase, m: int) -> int:
    """Kernel dimension of the distance-r normal displacement map.

    Counted through the vanishing of the closed-form Jacobi factors at the
    case's radius: 1 for the quadric tube (Reeb line), 0 for the
    horosphere, m-1 for the real-form tube (the mu-block).
    """
    if m < 3:
        raise ValueError(f"dimension parameter must be >= 3, got {m}")
    r = case.r if case.r is not None else 1.0
    kernel = 0
    blocks = ((JacobiCase.MINUS_TWO, case.alpha, 1),
              (JacobiCase.MINUS_TWO, case.mu, m - 1),
              (JacobiCase.ZERO, case.lam, m - 1))
    for jcase, sigma, mult in blocks:
        z, _ = jacobi_closed_form(jcase, sigma, r)
        if abs(z) <= 1e-9:
            kernel += mult
    return kernel
