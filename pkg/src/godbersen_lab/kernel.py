"""d-dimensional polytope arithmetic with explicit floating-point tolerances.

Bodies are always full-dimensional and bounded.  A body lives either as a
``VPolytope`` (irredundant vertex list, the universal representation) or an
``HPolytope`` (half-space system carrying a strictly interior witness, used
for polarity, sections and intersections).  Lower-dimensional input is
rejected rather than silently embedded.

Hull combinatorics are delegated to Qhull; everything on top of the raw
hull output is handled here: merged facets can make Qhull report boundary
points that are not extreme and emit overlapping boundary simplices, so
vertices are re-filtered by the rank of their active facet normals, and
volumes are computed from an interior-point fan over facets that are
re-triangulated per facet (a genuine tiling, robust for merged facets).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull as _Qhull
from scipy.spatial import Delaunay as _QhullDelaunay
from scipy.spatial import QhullError

from . import lp
from .errors import (
    DegenerateInput,
    DegenerateSection,
    DimensionMismatch,
    EmptyIntersection,
    EmptySection,
    GeometryError,
    NumericalFailure,
    OriginNotInterior,
    Unbounded,
    ZeroScale,
)

# Named tolerances.  All acceptance-scale bodies are well conditioned at
# unit scale; exact arithmetic is out of scope.
EPS_RANK = 1e-9      # affine-rank tests at construction
EPS_GEOM = 1e-9      # vertex/facet identity
EPS_STRICT = 1e-10   # strict interiority margins
COND_MAX = 1e12      # per-simplex conditioning budget in volume fans

__all__ = [
    "EPS_RANK", "EPS_GEOM", "EPS_STRICT", "COND_MAX",
    "VPolytope", "HPolytope", "AffineSubspace",
    "convex_hull", "volume", "centroid", "minkowski_sum",
    "scale", "negate", "translate",
    "polar", "polar_h", "v_to_h", "h_to_v", "intersect",
    "section", "project", "subspace_from_span", "coordinate_subspace",
    "contains_point", "same_vertex_set",
    "body_to_dict", "body_from_dict", "save_body", "load_body",
]


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True, eq=False)
class VPolytope:
    """Full-dimensional convex body given by its irredundant vertex list."""

    dim: int
    vertices: np.ndarray  # (m, dim), lexicographically sorted rows
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "_hull_cache", None)
        object.__setattr__(self, "_volume_cache", None)

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    def __repr__(self):  # pragma: no cover - debugging aid
        name = self.label or "VPolytope"
        return f"<{name}: dim={self.dim}, {self.n_vertices} vertices>"


@dataclass(frozen=True, eq=False)
class HPolytope:
    """Bounded intersection of half-spaces <a_i, x> <= b_i with a witness.

    Rows of ``normals`` are unit length.  ``interior_witness`` satisfies
    every constraint with margin at least EPS_STRICT (validated here);
    boundedness is checked in the hpolytope() constructor.
    """

    dim: int
    normals: np.ndarray   # (k, dim)
    offsets: np.ndarray   # (k,)
    interior_witness: np.ndarray  # (dim,)

    def __post_init__(self):
        slack = self.offsets - self.normals @ self.interior_witness
        if slack.size and slack.min() < EPS_STRICT:
            raise GeometryError("witness is not strictly interior")

    @property
    def n_halfspaces(self) -> int:
        return self.normals.shape[0]


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """Affine subspace point + span(basis); basis rows are orthonormal."""

    dim: int              # ambient dimension
    point: np.ndarray     # (dim,)
    basis: np.ndarray     # (j, dim)

    def __post_init__(self):
        gram = self.basis @ self.basis.T
        if not np.allclose(gram, np.eye(self.basis.shape[0]), atol=EPS_GEOM):
            raise GeometryError("subspace basis is not orthonormal")

    @property
    def subdim(self) -> int:
        return self.basis.shape[0]


def subspace_from_span(point, vectors, dim=None) -> AffineSubspace:
    """Orthonormalize spanning vectors (rows) into an AffineSubspace."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    point = np.asarray(point, dtype=float)
    d = dim if dim is not None else point.shape[0]
    q, r = np.linalg.qr(vectors.T)
    keep = np.abs(np.diag(r)) > EPS_RANK
    if not keep.all():
        raise DegenerateInput("spanning vectors are linearly dependent")
    return AffineSubspace(d, point, np.ascontiguousarray(q.T))


def coordinate_subspace(dim, indices, point=None) -> AffineSubspace:
    """Subspace spanned by the given coordinate axes."""
    basis = np.eye(dim)[list(indices)]
    p = np.zeros(dim) if point is None else np.asarray(point, dtype=float)
    return AffineSubspace(dim, p, basis)


# ---------------------------------------------------------------------------
# construction helpers


def _check_finite(pts: np.ndarray) -> None:
    if not np.isfinite(pts).all():
        raise DegenerateInput("non-finite coordinates")


def _lexsorted(verts: np.ndarray) -> np.ndarray:
    order = np.lexsort(verts.T[::-1])
    return np.ascontiguousarray(verts[order])


def _affine_rank_deficient(pts: np.ndarray) -> bool:
    centered = pts - pts.mean(axis=0)
    svals = np.linalg.svd(centered, compute_uv=False)
    scale_ref = max(1.0, float(svals[0])) if svals.size else 1.0
    d = pts.shape[1]
    if svals.size < d:
        return True
    return svals[d - 1] <= EPS_RANK * scale_ref


def _unique_facets(equations: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cluster per-simplex Qhull equations into unique facet planes."""
    normals = equations[:, :-1]
    offsets = -equations[:, -1]
    rows = np.column_stack([normals, offsets])
    order = np.lexsort(rows.T[::-1])
    rows = rows[order]
    keep = [0]
    for i in range(1, rows.shape[0]):
        if np.max(np.abs(rows[i] - rows[keep[-1]])) > EPS_GEOM:
            keep.append(i)
    rows = rows[keep]
    return rows[:, :-1], rows[:, -1]


def _vertex_scale(verts: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(verts))) if verts.size else 1.0)


def _extreme_filter(points: np.ndarray, normals: np.ndarray,
                    offsets: np.ndarray) -> np.ndarray:
    """Keep points whose active facet normals span the full dimension.

    Qhull lists every point on a merged facet as a "vertex"; a point is a
    true vertex iff the active constraints pin a zero-dimensional face.
    """
    d = points.shape[1]
    tol = EPS_GEOM * _vertex_scale(points)
    resid = np.abs(points @ normals.T - offsets)
    keep = []
    for i in range(points.shape[0]):
        active = normals[resid[i] <= tol]
        if active.shape[0] < d:
            continue
        svals = np.linalg.svd(active, compute_uv=False)
        if svals[d - 1] > EPS_RANK * max(1.0, svals[0]):
            keep.append(i)
    return points[keep]


def _from_sorted(dim: int, verts: np.ndarray, label: str) -> VPolytope:
    return VPolytope(dim, _lexsorted(verts), label)


def convex_hull(points, label: str = "") -> VPolytope:
    """Irredundant vertex hull of the given points.

    Raises DegenerateInput when the points do not affinely span R^d;
    lower-dimensional hulls are rejected, never embedded.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2:
        raise DegenerateInput("points must form a 2-d array")
    m, d = pts.shape
    if d < 1:
        raise DegenerateInput("ambient dimension must be >= 1")
    _check_finite(pts)
    if m < d + 1 or _affine_rank_deficient(pts):
        raise DegenerateInput(f"points do not span R^{d} affinely")

    if d == 1:
        verts = np.array([[pts.min()], [pts.max()]])
        return VPolytope(1, verts, label)

    try:
        hull = _Qhull(pts)
    except QhullError as exc:  # rank check passed but qhull still failed
        raise NumericalFailure(f"qhull failed: {exc}") from exc
    normals, offsets = _unique_facets(hull.equations)
    cand = pts[hull.vertices]
    verts = _extreme_filter(cand, normals, offsets)
    if verts.shape[0] < d + 1:
        raise DegenerateInput("hull collapsed under extremity filtering")
    body = _from_sorted(d, verts, label)
    object.__setattr__(body, "_hull_cache", (normals, offsets))
    return body


def _hull_data(K: VPolytope) -> tuple[np.ndarray, np.ndarray]:
    cached = getattr(K, "_hull_cache", None)
    if cached is not None:
        return cached
    if K.dim == 1:
        lo, hi = float(K.vertices.min()), float(K.vertices.max())
        data = (np.array([[1.0], [-1.0]]), np.array([hi, -lo]))
    else:
        try:
            hull = _Qhull(K.vertices)
        except QhullError as exc:
            raise NumericalFailure(f"qhull failed: {exc}") from exc
        data = _unique_facets(hull.equations)
    object.__setattr__(K, "_hull_cache", data)
    return data


def _plane_basis(normal: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to ``normal``."""
    _, _, vt = np.linalg.svd(normal[None, :])
    return vt[1:]


def _facet_simplices(K: VPolytope):
    """Yield boundary simplices (global vertex index arrays, one row each).

    Each facet is triangulated on its own: simplicial facets directly,
    merged facets through a Delaunay triangulation in intrinsic plane
    coordinates, which tiles the facet without overlaps.
    """
    normals, offsets = _hull_data(K)
    V = K.vertices
    d = K.dim
    tol = EPS_GEOM * _vertex_scale(V)
    resid = np.abs(V @ normals.T - offsets)
    for j in range(normals.shape[0]):
        idx = np.where(resid[:, j] <= tol)[0]
        if idx.size < d:
            raise NumericalFailure("facet with too few incident vertices")
        if idx.size == d:
            yield idx[None, :]
            continue
        basis = _plane_basis(normals[j])
        local = (V[idx] - V[idx[0]]) @ basis.T
        try:
            tri = _QhullDelaunay(local)
        except QhullError as exc:
            raise NumericalFailure(f"facet triangulation failed: {exc}") from exc
        yield idx[tri.simplices]


def volume(K: VPolytope) -> float:
    """d-volume via a fan from an interior point over triangulated facets.

    Deterministic for a fixed body.  Raises NumericalFailure when a fan
    simplex that carries volume is conditioned beyond COND_MAX.
    """
    cached = getattr(K, "_volume_cache", None)
    if cached is not None:
        return cached
    if K.dim == 1:
        vol = float(K.vertices.max() - K.vertices.min())
        object.__setattr__(K, "_volume_cache", vol)
        return vol
    c = K.vertices.mean(axis=0)
    total = 0.0
    for sims in _facet_simplices(K):
        M = K.vertices[sims] - c
        dets = np.abs(np.linalg.det(M))
        prods = np.prod(np.linalg.norm(M, axis=2), axis=1)
        material = dets > 1e-14 * prods
        if np.any(prods[material] > COND_MAX * dets[material]):
            raise NumericalFailure("fan simplex beyond conditioning budget")
        total += float(dets.sum())
    vol = total / math.factorial(K.dim)
    object.__setattr__(K, "_volume_cache", vol)
    return vol


def centroid(K: VPolytope) -> np.ndarray:
    """Center of mass from the same facet-fan triangulation as volume()."""
    if K.dim == 1:
        return np.array([0.5 * (K.vertices.min() + K.vertices.max())])
    c = K.vertices.mean(axis=0)
    acc = np.zeros(K.dim)
    wsum = 0.0
    for sims in _facet_simplices(K):
        M = K.vertices[sims] - c
        dets = np.abs(np.linalg.det(M))
        centers = (K.vertices[sims].sum(axis=1) + c) / (K.dim + 1)
        acc += dets @ centers
        wsum += float(dets.sum())
    return acc / wsum


# ---------------------------------------------------------------------------
# affine images and Minkowski sums


def scale(K: VPolytope, s: float, label: str = "") -> VPolytope:
    if s == 0:
        raise ZeroScale("scaling by zero collapses the body")
    return _from_sorted(K.dim, K.vertices * float(s),
                        label or f"{s:g}*{K.label or 'K'}")


def negate(K: VPolytope, label: str = "") -> VPolytope:
    return scale(K, -1.0, label or f"-{K.label or 'K'}")


def translate(K: VPolytope, t, label: str = "") -> VPolytope:
    t = np.asarray(t, dtype=float)
    if t.shape != (K.dim,):
        raise DimensionMismatch("translation vector has wrong dimension")
    return _from_sorted(K.dim, K.vertices + t, label or K.label)


def minkowski_sum(A: VPolytope, B: VPolytope, label: str = "") -> VPolytope:
    if A.dim != B.dim:
        raise DimensionMismatch(f"dim {A.dim} vs {B.dim}")
    sums = (A.vertices[:, None, :] + B.vertices[None, :, :])
    sums = sums.reshape(-1, A.dim)
    return convex_hull(sums, label or f"{A.label or 'A'}+{B.label or 'B'}")


# ---------------------------------------------------------------------------
# H-polytopes, polarity, conversions


def _normalize_rows(normals, offsets):
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    offsets = np.asarray(offsets, dtype=float)
    norms = np.linalg.norm(normals, axis=1)
    if np.any(norms <= 1e-14):
        bad = offsets[norms <= 1e-14]
        if np.any(bad < -EPS_GEOM):
            raise DegenerateInput("infeasible zero-normal constraint")
        keep = norms > 1e-14
        normals, offsets, norms = normals[keep], offsets[keep], norms[keep]
    return normals / norms[:, None], offsets / norms


def hpolytope(normals, offsets, witness, *, assume_bounded: bool = False,
              strict: float = EPS_STRICT) -> HPolytope:
    """Validated HPolytope constructor.

    The witness must satisfy every constraint with margin >= ``strict``;
    boundedness is checked by support evaluation along +-e_k unless the
    caller can guarantee it.
    """
    normals, offsets = _normalize_rows(normals, offsets)
    witness = np.asarray(witness, dtype=float)
    d = normals.shape[1]
    slack = offsets - normals @ witness
    if slack.size and slack.min() < strict:
        raise GeometryError("witness is not strictly interior")
    if not assume_bounded:
        for k in range(d):
            e = np.zeros(d)
            for sgn in (1.0, -1.0):
                e[k] = sgn
                if not np.isfinite(lp.support_value(normals, offsets, e)):
                    raise Unbounded(f"unbounded along coordinate {k}")
            e[k] = 0.0
    return HPolytope(d, normals, offsets, witness)


def v_to_h(K: VPolytope) -> HPolytope:
    """Facet system of a V-polytope; witness is the vertex centroid."""
    normals, offsets = _hull_data(K)
    witness = K.vertices.mean(axis=0)
    return hpolytope(normals, offsets, witness, assume_bounded=True)


def polar(K: VPolytope) -> HPolytope:
    """Polar body {y : <v, y> <= 1 for all vertices v} as an HPolytope."""
    _, offsets = _hull_data(K)
    if offsets.min() < EPS_STRICT:
        raise OriginNotInterior("origin is not strictly interior")
    return hpolytope(K.vertices, np.ones(K.n_vertices), np.zeros(K.dim),
                     assume_bounded=True)


def polar_h(H: HPolytope, label: str = "") -> VPolytope:
    """Polar body of an HPolytope, via the dual-hull method.

    Each halfspace <a, x> <= b with b > 0 dualizes to the point a / b;
    the hull of these points is the polar body.  An HPolytope that is
    unbounded (its dual hull does not contain 0 strictly) is rejected.
    """
    if H.offsets.min() < EPS_STRICT:
        raise OriginNotInterior("origin is not strictly interior")
    dual_pts = H.normals / H.offsets[:, None]
    try:
        P = convex_hull(dual_pts, label)
    except DegenerateInput as exc:
        raise Unbounded("dual points are degenerate") from exc
    _, off = _hull_data(P)
    if off.min() < EPS_STRICT:
        raise Unbounded("unbounded direction detected in dual hull")
    return P


def h_to_v(H: HPolytope, label: str = "") -> VPolytope:
    """Vertex enumeration: dualize about the witness and read facets back."""
    shifted = HPolytope(H.dim, H.normals,
                        H.offsets - H.normals @ H.interior_witness,
                        np.zeros(H.dim))
    D = polar_h(shifted)
    normals, offsets = _hull_data(D)
    verts = normals / offsets[:, None] + H.interior_witness
    return convex_hull(verts, label)


def intersect(H1: HPolytope, H2: HPolytope, label: str = "") -> HPolytope:
    """Intersection with redundant constraints pruned and a fresh witness.

    The witness maximizes the minimum slack (small dense LP); pruning goes
    through a vertex enumeration round trip so only true facets remain.
    """
    if H1.dim != H2.dim:
        raise DimensionMismatch(f"dim {H1.dim} vs {H2.dim}")
    normals = np.vstack([H1.normals, H2.normals])
    offsets = np.concatenate([H1.offsets, H2.offsets])
    witness, slack = lp.max_slack_point(normals, offsets)
    if not np.isfinite(slack) or slack <= EPS_STRICT:
        raise EmptyIntersection("intersection has no interior")
    raw = HPolytope(H1.dim, normals, offsets, witness)
    body = h_to_v(raw, label)
    pruned = v_to_h(body)
    return HPolytope(H1.dim, pruned.normals, pruned.offsets, witness)


# ---------------------------------------------------------------------------
# sections and projections


def section(K: VPolytope, E: AffineSubspace, label: str = "") -> VPolytope:
    """Slice K by an affine subspace, in E's intrinsic coordinates.

    Substituting x = p + B u into the facet system of K gives a half-space
    system in u; the witness comes from a max-slack LP.  The basis is
    orthonormal, so intrinsic volume equals ambient j-dimensional volume.
    """
    if E.dim != K.dim:
        raise DimensionMismatch("subspace ambient dimension mismatch")
    H = v_to_h(K)
    normals = H.normals @ E.basis.T
    offsets = H.offsets - H.normals @ E.point
    norms = np.linalg.norm(normals, axis=1)
    degenerate = norms <= 1e-12
    if np.any(offsets[degenerate] < -EPS_GEOM):
        raise EmptySection("subspace misses the body")
    normals, offsets = normals[~degenerate], offsets[~degenerate]
    norms = norms[~degenerate]
    normals, offsets = normals / norms[:, None], offsets / norms
    witness, slack = lp.max_slack_point(normals, offsets)
    if slack < -EPS_GEOM:
        raise EmptySection("subspace misses the interior of the body")
    if slack <= EPS_STRICT:
        raise DegenerateSection("section is lower-dimensional in E")
    raw = HPolytope(E.subdim, normals, offsets, witness)
    return h_to_v(raw, label)


def project(K: VPolytope, E: AffineSubspace, label: str = "") -> VPolytope:
    """Orthogonal shadow of K on a linear subspace, in intrinsic coordinates."""
    if E.dim != K.dim:
        raise DimensionMismatch("subspace ambient dimension mismatch")
    if np.linalg.norm(E.point) > EPS_GEOM:
        raise GeometryError("projection requires a linear subspace (p = 0)")
    coords = K.vertices @ E.basis.T
    return convex_hull(coords, label)


# ---------------------------------------------------------------------------
# predicates and serialization


def contains_point(K: VPolytope, x, tol: float = EPS_GEOM) -> bool:
    normals, offsets = _hull_data(K)
    x = np.asarray(x, dtype=float)
    return bool(np.all(normals @ x <= offsets + tol))


def same_vertex_set(A: VPolytope, B: VPolytope, tol: float = EPS_GEOM) -> bool:
    """Vertex lists matched as sets within tolerance."""
    if A.dim != B.dim or A.n_vertices != B.n_vertices:
        return False
    dist = np.linalg.norm(A.vertices[:, None, :] - B.vertices[None, :, :],
                          axis=2)
    return bool(dist.min(axis=1).max() <= tol and
                dist.min(axis=0).max() <= tol)


def body_to_dict(K: VPolytope) -> dict:
    return {"dim": K.dim, "vertices": K.vertices.tolist(), "label": K.label}


def body_from_dict(data: dict) -> VPolytope:
    verts = np.asarray(data["vertices"], dtype=float)
    body = convex_hull(verts, str(data.get("label", "")))
    if body.dim != int(data["dim"]):
        raise DegenerateInput("dim field does not match vertex length")
    return body


def save_body(K: VPolytope, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(body_to_dict(K), fh)
        fh.write("\n")


def load_body(path) -> VPolytope:
    with open(path, encoding="utf-8") as fh:
        return body_from_dict(json.load(fh))
