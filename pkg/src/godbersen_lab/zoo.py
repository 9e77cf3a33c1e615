"""Deterministic generators of test bodies with known properties.

Every generator is a pure function of its BodySpec; random families draw
from a seeded PCG64 stream, so the same spec is bit-reproducible across
platforms and runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernel, lp
from .errors import BadSpec
from .kernel import VPolytope, convex_hull, translate, v_to_h

GENERATORS = ("SIMPLEX", "CUBE", "CROSS", "RANDOM_SPHERE",
              "RANDOM_GAUSS_HULL", "REULEAUX_POLY")

__all__ = ["BodySpec", "GENERATORS", "generate", "centroid", "recenter",
           "spec_to_dict", "spec_from_dict", "default_zoo"]

centroid = kernel.centroid


@dataclass(frozen=True)
class BodySpec:
    """Serializable description of a generated body."""

    generator: str
    dim: int
    m: int | None = None        # vertex count for random families
    seed: int | None = None
    k: int | None = None        # Reuleaux polygon arc count (odd)
    transform: tuple | None = None  # (matrix rows, translation) as lists

    def label(self) -> str:
        parts = [self.generator.lower(), str(self.dim)]
        if self.m is not None:
            parts.append(f"m{self.m}")
        if self.seed is not None:
            parts.append(f"s{self.seed}")
        if self.k is not None:
            parts.append(f"k{self.k}")
        name = "_".join(parts)
        if self.transform is not None:
            name += "_aff"
        return name


def spec_to_dict(spec: BodySpec) -> dict:
    out = {"generator": spec.generator, "dim": spec.dim}
    for key in ("m", "seed", "k"):
        val = getattr(spec, key)
        if val is not None:
            out[key] = val
    if spec.transform is not None:
        matrix, shift = spec.transform
        out["transform"] = {"matrix": np.asarray(matrix).tolist(),
                            "translation": np.asarray(shift).tolist()}
    return out


def spec_from_dict(data: dict) -> BodySpec:
    transform = None
    if data.get("transform") is not None:
        t = data["transform"]
        transform = (tuple(map(tuple, t["matrix"])),
                     tuple(t["translation"]))
    return BodySpec(
        generator=str(data["generator"]).upper(),
        dim=int(data["dim"]),
        m=int(data["m"]) if data.get("m") is not None else None,
        seed=int(data["seed"]) if data.get("seed") is not None else None,
        k=int(data["k"]) if data.get("k") is not None else None,
        transform=transform,
    )


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _reuleaux_points(k: int) -> np.ndarray:
    # regular k-gon with unit width; each arc is centered at the opposite
    # vertex, 8 inscribed samples per arc (closed boundary, no duplicates)
    radius = 1.0 / (2.0 * np.cos(np.pi / (2 * k)))
    angles = 2 * np.pi * np.arange(k) / k + np.pi / 2
    V = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    pts = []
    for j in range(k):
        a, b = V[j], V[(j + 1) % k]
        c = V[(j + (k + 1) // 2) % k]
        t0 = np.arctan2(*(a - c)[::-1])
        t1 = np.arctan2(*(b - c)[::-1])
        sweep = (t1 - t0) % (2 * np.pi)
        ts = t0 + sweep * np.arange(8) / 8
        pts.append(c + np.column_stack([np.cos(ts), np.sin(ts)]))
    return np.vstack(pts)


def generate(spec: BodySpec) -> VPolytope:
    """Materialize a BodySpec as a VPolytope (bit-reproducible)."""
    gen, d = spec.generator.upper(), spec.dim
    if gen not in GENERATORS:
        raise BadSpec(f"unknown generator {spec.generator!r}")
    if d < 1:
        raise BadSpec("dimension must be >= 1")

    if gen == "SIMPLEX":
        pts = np.vstack([np.zeros(d), np.eye(d)])
    elif gen == "CUBE":
        pts = np.array(list(product([0.0, 1.0], repeat=d)))
    elif gen == "CROSS":
        pts = np.vstack([np.eye(d), -np.eye(d)])
    elif gen in ("RANDOM_SPHERE", "RANDOM_GAUSS_HULL"):
        if spec.seed is None:
            raise BadSpec("random generators require a seed")
        m = spec.m if spec.m is not None else 2 * d + 6
        if m < d + 1:
            raise BadSpec("need at least dim+1 points")
        pts = _rng(spec.seed).standard_normal((m, d))
        if gen == "RANDOM_SPHERE":
            pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    else:  # REULEAUX_POLY
        if d != 2:
            raise BadSpec("Reuleaux polygons exist only in the plane")
        k = spec.k if spec.k is not None else 3
        if k < 3 or k % 2 == 0:
            raise BadSpec("Reuleaux polygon needs odd k >= 3")
        pts = _reuleaux_points(k)

    if spec.transform is not None:
        matrix, shift = spec.transform
        A = np.asarray(matrix, dtype=float)
        t = np.asarray(shift, dtype=float)
        if A.shape != (d, d) or abs(np.linalg.det(A)) < 1e-12:
            raise BadSpec("transform matrix must be invertible d x d")
        pts = pts @ A.T + t
    return convex_hull(pts, spec.label())


def recenter(K: VPolytope, mode: str = "CENTROID") -> VPolytope:
    """Translate K so the chosen interior point moves to the origin."""
    mode = mode.upper()
    if mode == "CENTROID":
        point = centroid(K)
    elif mode == "CHEBYSHEV":
        H = v_to_h(K)
        point, _ = lp.max_slack_point(H.normals, H.offsets)
    else:
        raise BadSpec(f"unknown recenter mode {mode!r}")
    return translate(K, -point, label=K.label and f"{K.label}_c0")


def default_zoo(dims=(2, 3, 4, 5), seed: int = 2024) -> list[BodySpec]:
    """The built-in sweep zoo: named bodies plus seeded random families."""
    specs = []
    for d in dims:
        specs.append(BodySpec("SIMPLEX", d))
        specs.append(BodySpec("CUBE", d))
        specs.append(BodySpec("CROSS", d))
        specs.append(BodySpec("RANDOM_SPHERE", d, m=2 * d + 6, seed=seed + d))
        specs.append(BodySpec("RANDOM_GAUSS_HULL", d, m=2 * d + 6,
                              seed=seed + 10 * d))
    return specs
