"""Auxiliary bodies behind the inequalities: lifted hulls, diagonal
embeddings, unbalanced difference bodies and polar-sum bodies.

All constructions return ordinary kernel bodies (plus thin wrapper types
for the lifted ones), so every identity about them can be tested
body-against-body through the kernel's volumes, sections and projections.
Sections come back in intrinsic orthonormal coordinates; the sqrt(2)-type
factors of the diagonal constructions are therefore observable volume
ratios rather than silent conventions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from . import kernel
from .errors import DimensionMismatch, NumericalFailure
from .kernel import (
    AffineSubspace,
    VPolytope,
    convex_hull,
    h_to_v,
    minkowski_sum,
    negate,
    polar,
    project,
    scale,
    section,
    subspace_from_span,
    volume,
)

CLOSED_FORM_REL_TOL = 1e-6
MAX_LIFT_BASE_DIM = 3

__all__ = [
    "LiftedBodyC", "LiftedBodyT",
    "build_C", "build_T", "section_T", "project_T",
    "build_diag_C", "diag_section", "diag_projection",
    "unbalanced_difference_body", "conv_union", "polar_sum_body",
]


@dataclass(frozen=True, eq=False)
class LiftedBodyC:
    """conv({0} x (1-lam)K  u  {1} x (-lam K)) in R^{n+1}.

    The first coordinate is the lift parameter; the slice at height 0 is
    (1-lam)K and the slice at height 1 is -lam K (checked on the vertex
    sets at construction).
    """

    base_dim: int
    lam: float
    body: VPolytope


@dataclass(frozen=True, eq=False)
class LiftedBodyT:
    """conv({(0,0,y): y in K2} u {(1,x,-x): x in K1}) in R^{2n+1}."""

    base_dim: int
    body: VPolytope
    factors: tuple[VPolytope, VPolytope]


def _match_slice(body: VPolytope, height: float, expected: VPolytope) -> bool:
    mask = np.abs(body.vertices[:, 0] - height) <= kernel.EPS_GEOM
    sliced = body.vertices[mask][:, 1:]
    if sliced.shape[0] != expected.n_vertices:
        return False
    d = np.linalg.norm(sliced[:, None, :] - expected.vertices[None, :, :],
                       axis=2)
    return bool(d.min(axis=1).max() <= kernel.EPS_GEOM)


def build_C(K: VPolytope, lam: float) -> LiftedBodyC:
    """Lift of the blend family: apex cone for lam in {0, 1}."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    n = K.dim
    rows = []
    if lam < 1.0:
        bottom = (1.0 - lam) * K.vertices
        rows.append(np.column_stack([np.zeros(K.n_vertices), bottom]))
    else:
        rows.append(np.zeros((1, n + 1)))
    if lam > 0.0:
        top = -lam * K.vertices
        rows.append(np.column_stack([np.ones(K.n_vertices), top]))
    else:
        apex = np.zeros((1, n + 1))
        apex[0, 0] = 1.0
        rows.append(apex)
    body = convex_hull(np.vstack(rows),
                       label=f"C({K.label or 'K'},lam={lam:g})")
    lifted = LiftedBodyC(n, float(lam), body)
    if lam < 1.0 and not _match_slice(body, 0.0, scale(K, 1.0 - lam)):
        raise NumericalFailure("C slice at height 0 is not (1-lam)K")
    if lam > 0.0 and not _match_slice(body, 1.0, scale(K, -lam)):
        raise NumericalFailure("C slice at height 1 is not -lam K")
    return lifted


def build_T(K1: VPolytope, K2: VPolytope) -> LiftedBodyT:
    """The Rogers-Shephard lift in R^{2n+1}; its volume obeys the closed
    form n! n! / (2n+1)! vol(K1) vol(K2), checked at construction."""
    if K1.dim != K2.dim:
        raise DimensionMismatch(f"dim {K1.dim} vs {K2.dim}")
    n = K1.dim
    if n > MAX_LIFT_BASE_DIM:
        raise ValueError(f"build_T capped at base dimension {MAX_LIFT_BASE_DIM}")
    m2 = K2.n_vertices
    low = np.column_stack([np.zeros(m2), np.zeros((m2, n)), K2.vertices])
    m1 = K1.n_vertices
    high = np.column_stack([np.ones(m1), K1.vertices, -K1.vertices])
    body = convex_hull(np.vstack([low, high]),
                       label=f"T({K1.label or 'K1'},{K2.label or 'K2'})")
    if body.n_vertices > m1 + m2:
        raise NumericalFailure("T gained vertices beyond its generators")
    expected = (factorial(n) ** 2 / factorial(2 * n + 1)
                * volume(K1) * volume(K2))
    got = volume(body)
    if abs(got - expected) > CLOSED_FORM_REL_TOL * expected:
        raise NumericalFailure(
            f"vol(T) = {got:.12g} deviates from closed form {expected:.12g}")
    return LiftedBodyT(n, body, (K1, K2))


def section_T(T: LiftedBodyT, theta0: float) -> VPolytope:
    """Slice of T at {(theta0, x, 0)}: equals theta0 K1 ∩ (1-theta0) K2."""
    if not 0.0 < theta0 < 1.0:
        raise ValueError("theta0 must lie in (0, 1)")
    n = T.base_dim
    point = np.zeros(2 * n + 1)
    point[0] = theta0
    E = kernel.coordinate_subspace(2 * n + 1, range(1, n + 1), point)
    return section(T.body, E, label=f"T_section(theta0={theta0:g})")


def project_T(T: LiftedBodyT) -> VPolytope:
    """Shadow of T on {(theta, 0, y)}: the C-type body in R^{n+1}."""
    n = T.base_dim
    E = kernel.coordinate_subspace(2 * n + 1,
                                   [0] + list(range(n + 1, 2 * n + 1)))
    return project(T.body, E, label="T_projection")


def build_diag_C(K: VPolytope, L: VPolytope) -> VPolytope:
    """conv(K x {0} u {0} x L) in R^{2n}; vol = vol(K) vol(L) / C(2n, n)."""
    if K.dim != L.dim:
        raise DimensionMismatch(f"dim {K.dim} vs {L.dim}")
    n = K.dim
    if n > MAX_LIFT_BASE_DIM:
        raise ValueError(f"build_diag_C capped at dimension {MAX_LIFT_BASE_DIM}")
    top = np.column_stack([K.vertices, np.zeros((K.n_vertices, n))])
    bot = np.column_stack([np.zeros((L.n_vertices, n)), L.vertices])
    body = convex_hull(np.vstack([top, bot]),
                       label=f"diagC({K.label or 'K'},{L.label or 'L'})")
    expected = volume(K) * volume(L) / comb(2 * n, n)
    got = volume(body)
    if abs(got - expected) > CLOSED_FORM_REL_TOL * expected:
        raise NumericalFailure(
            f"vol(diag C) = {got:.12g} deviates from {expected:.12g}")
    return body


def _diag_subspace(n: int, lam: float) -> AffineSubspace:
    rows = np.hstack([lam * np.eye(n), (1.0 - lam) * np.eye(n)])
    return subspace_from_span(np.zeros(2 * n), rows)


def _antidiag_subspace(n: int, lam: float) -> AffineSubspace:
    rows = np.hstack([(1.0 - lam) * np.eye(n), -lam * np.eye(n)])
    return subspace_from_span(np.zeros(2 * n), rows)


def diag_section(C2n: VPolytope, lam: float) -> VPolytope:
    """Section of the diagonal body by E_lam = {(lam x, (1-lam) x)}.

    Returned in intrinsic orthonormal coordinates of E_lam, so the volume
    carries the parametrization factor (lam^2 + (1-lam)^2)^{n/2}; at
    lam = 1/2 this is the sqrt(2)^n relating it to (K* + L*)*.
    """
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must lie in (0, 1)")
    if C2n.dim % 2:
        raise DimensionMismatch("diagonal body must have even dimension")
    n = C2n.dim // 2
    return section(C2n, _diag_subspace(n, lam),
                   label=f"diag_section(lam={lam:g})")


def diag_projection(C2n: VPolytope, lam: float) -> VPolytope:
    """Shadow of the diagonal body on the complement of E_lam, intrinsic."""
    if not 0.0 < lam < 1.0:
        raise ValueError("lam must lie in (0, 1)")
    if C2n.dim % 2:
        raise DimensionMismatch("diagonal body must have even dimension")
    n = C2n.dim // 2
    return project(C2n, _antidiag_subspace(n, lam),
                   label=f"diag_projection(lam={lam:g})")


def unbalanced_difference_body(K: VPolytope, lam: float) -> VPolytope:
    """(1-lam) K + lam (-K); volume equals blend_volume(K, lam)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    name = f"D_{lam:g}({K.label or 'K'})"
    if lam == 0.0:
        return VPolytope(K.dim, K.vertices.copy(), name)
    if lam == 1.0:
        return negate(K, label=name)
    return minkowski_sum(scale(K, 1.0 - lam), scale(K, -lam), label=name)


def conv_union(A: VPolytope, B: VPolytope, label: str = "") -> VPolytope:
    """Hull of the vertex union of two bodies of equal dimension."""
    if A.dim != B.dim:
        raise DimensionMismatch(f"dim {A.dim} vs {B.dim}")
    return convex_hull(np.vstack([A.vertices, B.vertices]),
                       label or f"conv({A.label or 'A'} u {B.label or 'B'})")


def polar_sum_body(K: VPolytope, L: VPolytope) -> VPolytope:
    """(K* + L*)* through the polar pipeline; needs 0 interior to both."""
    if K.dim != L.dim:
        raise DimensionMismatch(f"dim {K.dim} vs {L.dim}")
    Kp = h_to_v(polar(K))
    Lp = h_to_v(polar(L))
    sum_p = minkowski_sum(Kp, Lp)
    return h_to_v(polar(sum_p),
                  label=f"polar_sum({K.label or 'K'},{L.label or 'L'})")
