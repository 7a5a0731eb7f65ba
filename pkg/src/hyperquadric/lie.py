"""Matrix model of the indefinite orthogonal Lie algebra so(2, m).

The algebra is realized as real (m+2) x (m+2) matrices X satisfying

    X^t . s = -s . X,     s = diag(-1, -1, 1, ..., 1),

written in block form with respect to R^(m+2) = R^2 (+) R^m:

    X = [[X11, X12],
         [X21, X22]],   X11^t = -X11,  X12^t = X21,  X22^t = -X22.

Conjugation by s is an involution whose (+1)-eigenspace k (block-diagonal,
isomorphic to so(2) (+) so(m)) and (-1)-eigenspace m (block-off-diagonal)
give the Cartan decomposition g = k (+) m.  The m-part models the tangent
space of the quotient SO(2,m)/SO(2)SO(m) at the origin; the quotient
geometry itself lives in :mod:`hyperquadric.geometry`.

All values here are plain immutable containers around numpy arrays, and all
operations are pure functions, so the module is safe to use concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm as _expm

# Relative residual accepted on the membership invariants (double precision
# drift over repeated products; all checks are scale-normalized).
MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Context:
    """Dimension parameter m plus the three structure matrices.

    ``s`` is the signature involution, ``j`` generates the central rotation
    of the isotropy group (the complex structure at the origin), ``a0`` is
    the reflection whose adjoint action is the base real structure.
    """

    m: int
    s: np.ndarray
    j: np.ndarray
    a0: np.ndarray

    @property
    def n(self) -> int:
        return self.m + 2


@dataclass(frozen=True, eq=False)
class LieElement:
    """Element of so(2, m): X^t s = -s X."""

    ctx: Context
    mat: np.ndarray


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Element of the matrix group O(2, m): g^t s g = s."""

    ctx: Context
    mat: np.ndarray


def make_context(m: int) -> Context:
    """Build the structure matrices for so(2, m).

    Requires m >= 3; the low-dimensional quotients degenerate to classical
    hyperbolic spaces and are excluded.
    """
    if int(m) != m or m < 3:
        raise ValueError(f"dimension parameter must be an integer >= 3, got {m}")
    m = int(m)
    n = m + 2
    s = np.diag([-1.0, -1.0] + [1.0] * m)
    j = np.eye(n)
    j[0, 0] = 0.0
    j[1, 1] = 0.0
    j[0, 1] = 1.0
    j[1, 0] = -1.0
    a0 = np.diag([1.0, -1.0] + [1.0] * m)
    return Context(m=m, s=s, j=j, a0=a0)


def _require_same_context(a, b) -> None:
    if a.ctx.m != b.ctx.m:
        raise ValueError(f"dimension mismatch: m={a.ctx.m} vs m={b.ctx.m}")


def algebra_residual(x: LieElement) -> float:
    """Relative residual of the membership condition X^t s = -s X."""
    s = x.ctx.s
    num = np.linalg.norm(x.mat.T @ s + s @ x.mat)
    return float(num / max(1.0, np.linalg.norm(x.mat)))


def group_residual(g: GroupElement) -> float:
    """Relative residual of the membership condition g^t s g = s."""
    s = g.ctx.s
    num = np.linalg.norm(g.mat.T @ s @ g.mat - s)
    return float(num / max(1.0, np.linalg.norm(g.mat) ** 2))


def project_to_algebra(ctx: Context, mat: np.ndarray) -> LieElement:
    """Project an arbitrary square matrix onto so(2, m).

    X = (M - s M^t s)/2 satisfies X^t s = -s X for any M.
    """
    s = ctx.s
    return LieElement(ctx, 0.5 * (mat - s @ mat.T @ s))


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Commutator [X, Y] = XY - YX; closed in so(2, m)."""
    _require_same_context(x, y)
    return LieElement(x.ctx, x.mat @ y.mat - y.mat @ x.mat)


def cartan_split(x: LieElement) -> tuple[LieElement, LieElement]:
    """Split X into its k-part (block-diagonal) and m-part (off-diagonal).

    k = (X + sXs)/2 and m = (X - sXs)/2 are the eigenspace projections of
    conjugation by s; they are trace-form orthogonal and sum to X.
    """
    s = x.ctx.s
    sxs = s @ x.mat @ s
    return (LieElement(x.ctx, 0.5 * (x.mat + sxs)),
            LieElement(x.ctx, 0.5 * (x.mat - sxs)))


def exp(x: LieElement, t: float = 1.0) -> GroupElement:
    """Matrix exponential of tX.

    Evaluated by scaling-and-squaring with a Pade approximant
    (scipy.linalg.expm, Al-Mohy/Higham); relative accuracy is far below the
    1e-10 group-membership tolerance for the |t|.|X| <= 8 range used by the
    geodesic code.
    """
    mat = _expm(float(t) * x.mat)
    if not np.all(np.isfinite(mat)):
        raise FloatingPointError("matrix exponential produced non-finite entries")
    return GroupElement(x.ctx, mat)


def group_inverse(g: GroupElement) -> np.ndarray:
    """Inverse via the group invariant: g^{-1} = s g^t s.

    Exact (up to the membership residual of g itself), so no linear solve
    can fail here.
    """
    s = g.ctx.s
    return s @ g.mat.T @ s


def ad(g: GroupElement, x: LieElement) -> LieElement:
    """Adjoint action Ad(g)X = g X g^{-1}.

    Preserves membership in so(2, m); for block-diagonal g it also
    preserves the Cartan split.
    """
    _require_same_context(g, x)
    return LieElement(x.ctx, g.mat @ x.mat @ group_inverse(g))
