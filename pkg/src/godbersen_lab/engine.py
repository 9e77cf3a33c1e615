"""Mixed-volume profiles of the one-parameter family (1-l)K + l(-K).

The volume of a Minkowski combination of convex bodies is a homogeneous
polynomial of degree n in the scaling weights; specialized to K and -K,

    vol((1-l)K + l(-K)) = sum_j C(n,j) l^j (1-l)^{n-j} V_j,

with V_j = V(K[j], -K[n-j]) the mixed volume of j copies of K and n-j
copies of -K.  The profile V_0..V_n is extracted by sampling the blend
volume at n+1 uniform nodes and solving the Bernstein collocation system;
an independent inclusion-exclusion oracle over sub-sums cross-validates
the extraction for small n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import comb, factorial

import numpy as np

from .errors import IllConditioned, NumericalFailure
from .kernel import VPolytope, minkowski_sum, scale, volume

MAX_PROFILE_DIM = 8
MAX_POLARIZATION_DIM = 5
COND_LIMIT = 1e10
PROFILE_REL_TOL = 1e-7   # symmetry / endpoint / lower-bound guard

__all__ = [
    "MixedVolumeProfile", "blend_volume", "mixed_volume_profile",
    "polarization_mixed_volume", "godbersen_ratios", "reconstruct_blend",
    "profile_to_dict",
]


@dataclass(frozen=True, eq=False)
class MixedVolumeProfile:
    """The sequence V_j = V(K[j], -K[n-j]) for j = 0..n, plus vol(K).

    Invariants checked at construction: V_0 = V_n = vol(K), the symmetry
    V_j = V_{n-j}, and the Alexandrov lower bound V_j >= vol(K), all
    within PROFILE_REL_TOL relative tolerance.
    """

    n: int
    vol: float
    values: np.ndarray
    condition_estimate: float
    label: str = ""

    def __post_init__(self):
        tol = PROFILE_REL_TOL * self.vol
        v = self.values
        if abs(v[0] - self.vol) > tol or abs(v[-1] - self.vol) > tol:
            raise NumericalFailure("profile endpoints differ from vol(K)")
        if np.max(np.abs(v - v[::-1])) > tol:
            raise NumericalFailure("profile symmetry V_j = V_{n-j} violated")
        if v.min() < self.vol - tol:
            raise NumericalFailure("Alexandrov lower bound violated")


def blend_volume(K: VPolytope, lam: float) -> float:
    """vol((1-lam) K + lam (-K)); the unbalanced difference-body volume."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    if lam in (0.0, 1.0):
        return volume(K)
    return volume(minkowski_sum(scale(K, 1.0 - lam), scale(K, -lam)))


def _bernstein_matrix(n: int) -> np.ndarray:
    nodes = np.arange(n + 1) / n
    M = np.empty((n + 1, n + 1))
    for j in range(n + 1):
        M[:, j] = comb(n, j) * nodes ** j * (1.0 - nodes) ** (n - j)
    return M


def mixed_volume_profile(K: VPolytope, label: str = "") -> MixedVolumeProfile:
    """Extract V_0..V_n from blend volumes at the nodes i/n.

    The collocation system in the Bernstein basis is solved by
    partial-pivoted elimination; its condition number is recorded and
    guarded (IllConditioned above COND_LIMIT).
    """
    n = K.dim
    if n > MAX_PROFILE_DIM:
        raise ValueError(f"profile extraction capped at n <= {MAX_PROFILE_DIM}")
    samples = np.array([blend_volume(K, i / n) for i in range(n + 1)])
    M = _bernstein_matrix(n)
    cond = float(np.linalg.cond(M))
    if cond > COND_LIMIT:
        raise IllConditioned(f"Bernstein system condition {cond:.3g}")
    values = np.linalg.solve(M, samples)
    return MixedVolumeProfile(n, float(samples[0]), values, cond,
                              label or K.label)


def reconstruct_blend(profile: MixedVolumeProfile, lam: float) -> float:
    """Evaluate sum_j C(n,j) lam^j (1-lam)^{n-j} V_j from the profile."""
    n = profile.n
    j = np.arange(n + 1)
    weights = np.array([comb(n, int(i)) for i in j], dtype=float)
    return float(np.sum(weights * lam ** j * (1.0 - lam) ** (n - j)
                        * profile.values))


def godbersen_ratios(profile: MixedVolumeProfile) -> np.ndarray:
    """r_j = V_j / (C(n,j) vol K); the conjectured bound is r_j <= 1."""
    n = profile.n
    binom = np.array([comb(n, j) for j in range(n + 1)], dtype=float)
    return profile.values / (binom * profile.vol)


def _group_by_identity(bodies) -> tuple[list[VPolytope], list[int]]:
    distinct: list[VPolytope] = []
    counts: list[int] = []
    for body in bodies:
        for i, seen in enumerate(distinct):
            if seen is body:
                counts[i] += 1
                break
        else:
            distinct.append(body)
            counts.append(1)
    return distinct, counts


def polarization_mixed_volume(bodies) -> float:
    """V(K_1, ..., K_n) by inclusion-exclusion over sub-sums:

        V = (1/n!) sum_{S nonempty} (-1)^{n-|S|} vol(sum_{i in S} K_i).

    Repeated arguments are collapsed through multiplicities, so the
    profile family (K[j], -K[n-j]) costs O(j (n-j)) hulls instead of 2^n.
    """
    bodies = list(bodies)
    n = len(bodies)
    if n == 0:
        raise ValueError("need at least one body")
    if n > MAX_POLARIZATION_DIM:
        raise ValueError(
            f"polarization oracle capped at n <= {MAX_POLARIZATION_DIM}")
    for body in bodies:
        if body.dim != n:
            raise ValueError("need n bodies in R^n")
    distinct, mult = _group_by_identity(bodies)
    total = 0.0
    for counts in product(*[range(m + 1) for m in mult]):
        csum = sum(counts)
        if csum == 0:
            continue
        parts = [scale(B, c) for B, c in zip(distinct, counts) if c > 0]
        body = reduce(minkowski_sum, parts)
        weight = 1.0
        for m, c in zip(mult, counts):
            weight *= comb(m, c)
        total += (-1.0) ** (n - csum) * weight * volume(body)
    return total / factorial(n)


def profile_to_dict(profile: MixedVolumeProfile) -> dict:
    return {
        "n": profile.n,
        "vol": profile.vol,
        "V": profile.values.tolist(),
        "ratios": godbersen_ratios(profile).tolist(),
        "cond": profile.condition_estimate,
    }
