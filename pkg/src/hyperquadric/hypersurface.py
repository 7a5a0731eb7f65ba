"""Pointwise almost-contact machinery for real hypersurfaces.

A real hypersurface of the quadric has odd dimension 2m-1 and inherits an
almost contact metric structure (phi, xi, eta, g) from the ambient complex
structure: xi = -J N is the Reeb vector, phi X the tangential part of J X,
eta = g(., xi).  A frame bundles one point's worth of data: the unit
normal, an orthonormal tangent basis ending in xi, and the shape operator
in basis coordinates.

The residual evaluators at the bottom check the pointwise identities that
drive the classification of contact hypersurfaces: the Codazzi-derived
identity for Hopf hypersurfaces, the shape-operator-squared identity for
contact hypersurfaces, and the conjugation invariance of shape images when
the normal is fixed by a real structure.  Exterior-derivative data is
evaluated through nabla_X xi = phi S X, which turns d(eta) into pointwise
shape-operator algebra; no vector fields are differentiated numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    Conjugation,
    TangentVector,
    VectorKind,
    complex_structure,
    conjugation_apply,
    metric,
    orthonormal_complement,
    singular_decompose,
)
from .lie import Context

HOPF_TOL = 1e-8
CONTACT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class AlmostContact:
    """Structure tensor phi, Reeb covector eta, and the position of xi."""

    phi: np.ndarray
    eta: np.ndarray
    xi_index: int


@dataclass(frozen=True, eq=False)
class HypersurfaceFrame:
    """One point of a hypersurface: normal, tangent basis, shape operator.

    ``basis`` is orthonormal, orthogonal to ``normal``, and ends with the
    Reeb vector xi = -J N.  ``shape`` is symmetric in basis coordinates.
    ``conj`` records the conjugation the model is adapted to, with
    ``conj_sign`` = +-1 telling whether it fixes or negates the normal
    (both orientations occur among the model hypersurfaces, and some
    identities change form with the choice).
    """

    normal: TangentVector
    basis: tuple[TangentVector, ...]
    shape: np.ndarray
    alpha: float
    k: float | None = None
    conj: Conjugation | None = None
    conj_sign: int = 0

    @property
    def ctx(self) -> Context:
        return self.normal.ctx

    @property
    def m(self) -> int:
        return self.normal.ctx.m

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def xi(self) -> TangentVector:
        return self.basis[-1]

    def coords(self, v: TangentVector) -> np.ndarray:
        """Tangential coordinates of an ambient vector (normal part dropped)."""
        return np.array([metric(b, v) for b in self.basis])

    def from_coords(self, c: np.ndarray) -> TangentVector:
        out = float(c[0]) * self.basis[0]
        for i in range(1, len(self.basis)):
            out = out + float(c[i]) * self.basis[i]
        return out

    def structure(self) -> AlmostContact:
        return induced_structure(self.normal, list(self.basis))


def frame_basis_for_normal(n: TangentVector) -> list[TangentVector]:
    """Deterministic orthonormal basis of the tangent space, xi last."""
    xi = -complex_structure(n)
    rest = orthonormal_complement(n.ctx, [n, xi])
    return rest + [xi]


def induced_structure(n: TangentVector, basis: list[TangentVector]) -> AlmostContact:
    """Induced almost contact structure in basis coordinates.

    xi = -J N, phi X = tangential part of J X, eta = g(., xi).  Validates
    that the basis is orthonormal and orthogonal to the (unit) normal.
    """
    if abs(n.norm() - 1.0) > 1e-8:
        raise ValueError("normal vector must be unit")
    d = len(basis)
    gram = np.array([[metric(bi, bj) for bj in basis] for bi in basis])
    if np.abs(gram - np.eye(d)).max() > 1e-8:
        raise ValueError("basis is not orthonormal")
    if max(abs(metric(b, n)) for b in basis) > 1e-8:
        raise ValueError("basis is not orthogonal to the normal")
    xi = -complex_structure(n)
    phi = np.empty((d, d))
    eta = np.empty(d)
    for jc, bj in enumerate(basis):
        jb = complex_structure(bj)
        pj = jb - metric(jb, n) * n
        eta[jc] = metric(bj, xi)
        for ir, bi in enumerate(basis):
            phi[ir, jc] = metric(pj, bi)
    return AlmostContact(phi=phi, eta=eta, xi_index=int(np.argmax(np.abs(eta))))


def almost_contact_residuals(ac: AlmostContact) -> dict[str, float]:
    """Max residuals of the five almost-contact-metric axioms.

    phi^2 = -I + eta (x) xi, phi xi = 0, eta o phi = 0, eta(xi) = 1,
    and g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y); xi's coordinates are
    eta itself since the basis is orthonormal.
    """
    phi, eta = ac.phi, ac.eta
    d = phi.shape[0]
    xi = eta
    return {
        "phi_squared": float(np.abs(phi @ phi + np.eye(d) - np.outer(xi, eta)).max()),
        "phi_xi": float(np.abs(phi @ xi).max()),
        "eta_phi": float(np.abs(eta @ phi).max()),
        "eta_xi": float(abs(np.dot(eta, xi) - 1.0)),
        "phi_metric": float(np.abs(phi.T @ phi - np.eye(d) + np.outer(eta, eta)).max()),
    }


def contact_defect(frame: HypersurfaceFrame, k: float | None = None) -> float:
    """Operator norm of S phi + phi S - k phi."""
    if k is None:
        k = frame.k
    if k is None:
        raise ValueError("no contact constant supplied and none stored on the frame")
    ac = frame.structure()
    s, phi = frame.shape, ac.phi
    return float(np.linalg.norm(s @ phi + phi @ s - k * phi, 2))


def deta_defect(frame: HypersurfaceFrame, rho: float) -> float:
    """Max residual of d(eta)(X, Y) = rho g(phi X, Y) over basis pairs.

    d(eta)(X, Y) = (1/2) g((phi S + S phi) X, Y), using nabla_X xi = phi S X.
    """
    ac = frame.structure()
    s, phi = frame.shape, ac.phi
    return float(np.abs(0.5 * (phi @ s + s @ phi) - rho * phi).max())


def hopf_data(frame: HypersurfaceFrame) -> tuple[float, float]:
    """Reeb principal value alpha = g(S xi, xi) and the defect |S xi - alpha xi|."""
    d = frame.dim
    e = np.zeros(d)
    e[-1] = 1.0  # xi is the last basis vector by the frame invariant
    sxi = frame.shape @ e
    alpha = float(sxi[-1])
    return alpha, float(np.linalg.norm(sxi - alpha * e))


def mean_curvature(frame: HypersurfaceFrame) -> float:
    """Trace of the shape operator."""
    return float(np.trace(frame.shape))


def mean_curvature_residual(frame: HypersurfaceFrame) -> float:
    """Residual of tr S = alpha + (m-1) k for the frame's declared constants."""
    if frame.k is None:
        raise ValueError("frame carries no contact constant")
    return abs(mean_curvature(frame) - frame.alpha - (frame.m - 1) * frame.k)


def conjugation_invariant_subspace(n: TangentVector) -> tuple[int, list[TangentVector]]:
    """Maximal subspace of the tangent space invariant under every conjugation.

    For a principal normal this is the whole maximal complex subbundle
    (dimension 2m-2); otherwise the complex spans of the two decomposition
    legs X, Y must also be removed (dimension 2m-4).
    """
    dec = singular_decompose(n)
    jn = complex_structure(n)
    if dec.kind is VectorKind.PRINCIPAL:
        removed = [n, jn]
    else:
        removed = [dec.x, complex_structure(dec.x), dec.y, complex_structure(dec.y)]
    basis = orthonormal_complement(n.ctx, removed)
    return len(basis), basis


def hopf_codazzi_residual(frame: HypersurfaceFrame) -> float:
    """Codazzi-derived pointwise identity for Hopf hypersurfaces.

    With A the conjugation adapted to the normal's singular decomposition,
    checks over all basis pairs (X, Y):

        0 = 2 g(S phi S X, Y) - alpha g((phi S + S phi) X, Y) + 2 g(phi X, Y)
            - 2 g(X, AN) g(Y, A xi) + 2 g(Y, AN) g(X, A xi)
            - 2 g(xi, A xi) {g(Y, AN) eta(X) - g(X, AN) eta(Y)}
    """
    _, defect = hopf_data(frame)
    if defect > HOPF_TOL:
        raise ValueError(f"frame is not Hopf (defect {defect:.3e})")
    a = singular_decompose(frame.normal).conj
    ac = frame.structure()
    s, phi, eta = frame.shape, ac.phi, ac.eta
    an = conjugation_apply(a, frame.normal)
    axi = conjugation_apply(a, frame.xi)
    u = frame.coords(an)
    v = frame.coords(axi)
    c = metric(frame.xi, axi)
    g6 = 2.0 * (s @ phi @ s) - frame.alpha * (phi @ s + s @ phi) + 2.0 * phi
    res = (g6.T - 2.0 * np.outer(u, v) + 2.0 * np.outer(v, u)
           - 2.0 * c * (np.outer(eta, u) - np.outer(u, eta)))
    return float(np.abs(res).max())


def contact_square_residual(frame: HypersurfaceFrame,
                            conj: Conjugation | None = None) -> float:
    """Shape-operator-squared identity for contact hypersurfaces.

    Holds for an arbitrary conjugation section A (defaults to the frame's):

        2 S^2 X = [eta(X)(2 a^2 - a k - 2)
                   - 2 (g(phi X, AN) eta(A xi) - eta(AN) g(phi X, A xi))] xi
                  + 2 k S X - (a k - 2) X
                  + g(phi X, AN) (A xi)^T - g(phi X, A xi) (AN)^T
                  + g(phi X, A xi) (J A xi)^T
                  - (g(X, A xi) - eta(X) eta(A xi)) (A xi)^T
    """
    if frame.k is None:
        raise ValueError("frame carries no contact constant")
    defect = contact_defect(frame, frame.k)
    if defect > CONTACT_TOL:
        raise ValueError(f"frame is not contact (defect {defect:.3e})")
    a = conj if conj is not None else (frame.conj or Conjugation(0.0))
    ac = frame.structure()
    s, phi, eta = frame.shape, ac.phi, ac.eta
    alpha, k = frame.alpha, frame.k
    an = conjugation_apply(a, frame.normal)
    axi = conjugation_apply(a, frame.xi)
    jaxi = complex_structure(axi)
    u = frame.coords(an)
    v = frame.coords(axi)
    wv = frame.coords(jaxi)
    eta_axi = metric(axi, frame.xi)
    eta_an = metric(an, frame.xi)
    d = frame.dim
    worst = 0.0
    for i in range(d):
        x = np.zeros(d)
        x[i] = 1.0
        phx = phi @ x
        lhs = 2.0 * (s @ (s @ x))
        rhs = ((eta[i] * (2.0 * alpha ** 2 - alpha * k - 2.0)
                - 2.0 * (float(phx @ u) * eta_axi - eta_an * float(phx @ v))) * eta
               + 2.0 * k * (s @ x) - (alpha * k - 2.0) * x
               + float(phx @ u) * v - float(phx @ v) * u + float(phx @ v) * wv
               - (float(x @ v) - eta[i] * eta_axi) * v)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def shape_conjugation_residual(frame: HypersurfaceFrame) -> float:
    """Max of |A(S X) - S X| over the complex subbundle, A fixing the normal.

    Only defined when the normal is principal; shape images then lie in the
    fixed space V(A) for the model hypersurfaces.
    """
    dec = singular_decompose(frame.normal)
    if dec.kind is not VectorKind.PRINCIPAL:
        raise ValueError("normal vector is not principal; no conjugation fixes it")
    a = dec.conj
    worst = 0.0
    for i in range(frame.dim - 1):  # basis[:-1] spans ker(eta)
        sx = frame.from_coords(frame.shape[:, i])
        worst = max(worst, (conjugation_apply(a, sx) - sx).norm())
    return worst
