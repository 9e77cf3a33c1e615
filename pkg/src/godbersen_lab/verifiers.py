"""Evaluate each inequality on concrete bodies; emit structured reports.

Every verifier normalizes its statement to the form lhs <= rhs and fills
an InequalityReport with the margin rhs - lhs.  Statements known to be
theorems must pass on every body (a failure is a build-failing event);
the open-conjecture statements (GODBERSEN_J for middle indices, and the
unbalanced inequality for n >= 6) are recorded with margins but never
asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernel
from .constructions import build_C, conv_union, polar_sum_body
from .engine import (
    MixedVolumeProfile,
    godbersen_ratios,
    mixed_volume_profile,
)
from .kernel import (
    AffineSubspace,
    VPolytope,
    h_to_v,
    intersect,
    minkowski_sum,
    negate,
    project,
    scale,
    section,
    translate,
    v_to_h,
    volume,
)
from .zoo import centroid

TOL_SCALE = 1e-7  # tol_verify = TOL_SCALE * max(1, rhs)

STATEMENTS = ("THM1", "LEM2", "COR3", "COR4", "RS_DIFF", "RS_SECPROJ",
              "GODBERSEN_J", "ALEXANDROV_J", "UNBALANCED", "STRANGE",
              "MILMAN_PAJOR", "REMARK_EL")

# statements with known proofs: any failed report is a hard error
_ALWAYS_PROVEN = frozenset(STATEMENTS) - {"GODBERSEN_J", "UNBALANCED"}
UNBALANCED_PROVEN_MAX_DIM = 5

__all__ = ["InequalityReport", "STATEMENTS", "default_lambda_grid",
           "is_proven", "verify_theorem_sum", "verify_lemma_C",
           "verify_average_corollary", "verify_markov_corollary",
           "verify_rs_difference", "verify_secproj", "verify_unbalanced",
           "verify_strange", "verify_milman_pajor", "verify_alexandrov",
           "verify_remark_EL", "godbersen_reports", "report_to_dict"]


@dataclass(frozen=True)
class InequalityReport:
    """One verified statement, normalized to lhs <= rhs."""

    statement_id: str
    body_labels: tuple[str, ...]
    parameters: dict
    lhs: float
    rhs: float
    margin: float = field(init=False)
    tol: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        margin = self.rhs - self.lhs
        tol = TOL_SCALE * max(1.0, self.rhs)
        object.__setattr__(self, "margin", margin)
        object.__setattr__(self, "tol", tol)
        object.__setattr__(self, "passed", bool(margin >= -tol))


def default_lambda_grid(count: int = 21) -> np.ndarray:
    """Uniform grid on [0, 1] including both endpoints."""
    return np.linspace(0.0, 1.0, count)


def is_proven(report: InequalityReport) -> bool:
    """Whether the report's statement is a theorem for its parameters."""
    if report.statement_id in _ALWAYS_PROVEN:
        return True
    if report.statement_id == "UNBALANCED":
        return report.parameters.get("n", 0) <= UNBALANCED_PROVEN_MAX_DIM
    return False


def report_to_dict(report: InequalityReport) -> dict:
    return {
        "statement_id": report.statement_id,
        "body_labels": list(report.body_labels),
        "parameters": {k: report.parameters[k]
                       for k in sorted(report.parameters)},
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "passed": report.passed,
    }


def _profile(K: VPolytope, profile: MixedVolumeProfile | None):
    return profile if profile is not None else mixed_volume_profile(K)


def _origin_slack(K: VPolytope) -> float:
    H = v_to_h(K)
    return float(H.offsets.min())


def _ensure_origin_interior(K: VPolytope):
    """Recenter to the centroid when 0 is not strictly interior."""
    if _origin_slack(K) >= kernel.EPS_STRICT:
        return K, None
    shift = -centroid(K)
    return translate(K, shift, label=K.label and f"{K.label}_c0"), shift


# ---------------------------------------------------------------------------
# single-body statements driven by the mixed-volume profile


def verify_theorem_sum(K: VPolytope, lam_grid=None,
                       profile: MixedVolumeProfile | None = None):
    """sum_j lam^j (1-lam)^{n-j} V_j <= vol(K), without binomial weights.

    The equivalent reformulation for vol-normalized profiles,
    sum_{j=1}^{n-1} lam^{j-1} (1-lam)^{n-j-1} [V_j/vol - C(n,j)] <= 0,
    is recomputed per report and its algebraic residual recorded; the
    main form stays canonical.
    """
    prof = _profile(K, profile)
    grid = default_lambda_grid() if lam_grid is None else np.asarray(lam_grid)
    n = prof.n
    j = np.arange(n + 1)
    binom = np.array([comb(n, int(i)) for i in j], dtype=float)
    normalized = prof.values / prof.vol
    out = []
    for lam in grid:
        lam = float(lam)
        lhs = float(np.sum(lam ** j * (1.0 - lam) ** (n - j) * prof.values))
        inner = np.arange(1, n)
        reform = float(np.sum(
            lam ** (inner - 1) * (1.0 - lam) ** (n - inner - 1)
            * (normalized[inner] - binom[inner])))
        margin_norm = (prof.vol - lhs) / prof.vol
        residual = abs(margin_norm + lam * (1.0 - lam) * reform)
        out.append(InequalityReport(
            "THM1", (K.label,),
            {"n": n, "lambda": lam, "reformulated_sum": reform,
             "reformulation_residual": residual},
            lhs, prof.vol))
    return out


def verify_lemma_C(K: VPolytope, lam_grid=None,
                   profile: MixedVolumeProfile | None = None):
    """vol(C(K, lam)) <= vol(K) / (n+1), with the exact integral identity
    vol(C) = (1/(n+1)) sum_j (1-lam)^{n-j} lam^j V_j recorded per report."""
    prof = _profile(K, profile)
    grid = default_lambda_grid() if lam_grid is None else np.asarray(lam_grid)
    n = K.dim
    j = np.arange(n + 1)
    out = []
    for lam in grid:
        lifted = build_C(K, float(lam))
        lhs = volume(lifted.body)
        identity = float(np.sum((1.0 - lam) ** (n - j) * lam ** j
                                * prof.values)) / (n + 1)
        rel = abs(lhs - identity) / max(identity, 1e-300)
        out.append(InequalityReport(
            "LEM2", (K.label,),
            {"n": n, "lambda": float(lam), "identity_rel_err": rel},
            lhs, prof.vol / (n + 1)))
    return out


def verify_average_corollary(K: VPolytope,
                             profile: MixedVolumeProfile | None = None):
    """(1/(n+1)) sum_j V_j / C(n,j) <= vol(K); the equivalent middle-term
    form is recomputed and its residual stored in the parameters."""
    prof = _profile(K, profile)
    n = prof.n
    ratios = np.array([prof.values[j] / comb(n, j) for j in range(n + 1)])
    lhs = float(ratios.sum() / (n + 1))
    middle = float(ratios[1:n].sum() / (n - 1)) if n >= 2 else lhs
    # identity: (n+1) * form1 - 2 vol = (n-1) * form2
    residual = abs((n + 1) * lhs - 2.0 * prof.vol - (n - 1) * middle)
    return InequalityReport(
        "COR3", (K.label,),
        {"n": n, "middle_form_lhs": middle, "form_residual": residual},
        lhs, prof.vol)


def verify_markov_corollary(K: VPolytope, k: int,
                            profile: MixedVolumeProfile | None = None):
    """At least k of the indices 1..n-1 satisfy
    V_j <= (n-1)/(n-k) C(n,j) vol(K)."""
    prof = _profile(K, profile)
    n = prof.n
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n-1")
    bound = (n - 1) / (n - k)
    good = sum(
        1 for j in range(1, n)
        if prof.values[j] <= bound * comb(n, j) * prof.vol
        * (1.0 + TOL_SCALE))
    return InequalityReport(
        "COR4", (K.label,), {"n": n, "k": k, "threshold": bound},
        float(k), float(good))


def verify_rs_difference(K: VPolytope,
                         profile: MixedVolumeProfile | None = None):
    """vol(K-K) <= C(2n,n) vol(K); the profile-side rewriting
    sum_j C(n,j) V_j must agree with the direct hull volume."""
    prof = _profile(K, profile)
    n = prof.n
    direct = volume(minkowski_sum(K, negate(K)))
    via_profile = float(sum(comb(n, j) * prof.values[j]
                            for j in range(n + 1)))
    rel = abs(direct - via_profile) / max(direct, 1e-300)
    return InequalityReport(
        "RS_DIFF", (K.label,),
        {"n": n, "profile_sum": via_profile, "paths_rel_err": rel},
        direct, comb(2 * n, n) * prof.vol)


def verify_alexandrov(K: VPolytope,
                      profile: MixedVolumeProfile | None = None):
    """V_j >= vol(K) for every j (equality iff K centrally symmetric)."""
    prof = _profile(K, profile)
    return [
        InequalityReport("ALEXANDROV_J", (K.label,),
                         {"n": prof.n, "j": j},
                         prof.vol, float(prof.values[j]))
        for j in range(prof.n + 1)
    ]


def godbersen_reports(K: VPolytope,
                      profile: MixedVolumeProfile | None = None):
    """Explore-mode records of V_j <= C(n,j) vol(K) for j = 1..n-1.

    The statement is an open conjecture for 2 <= j <= n-2; reports are
    never asserted, a negative margin only flags a counterexample
    candidate for logging.
    """
    prof = _profile(K, profile)
    n = prof.n
    return [
        InequalityReport("GODBERSEN_J", (K.label,),
                         {"n": n, "j": j,
                          "ratio": float(godbersen_ratios(prof)[j])},
                         float(prof.values[j]), comb(n, j) * prof.vol)
        for j in range(1, n)
    ]


def verify_unbalanced(K: VPolytope, lam_grid=None,
                      profile: MixedVolumeProfile | None = None):
    """Normalized form of the unbalanced difference-body conjecture:

        sum_j C(n,j) lam^j (1-lam)^{n-j} V_j/vol
            <= sum_j C(n,j)^2 lam^j (1-lam)^{n-j}.

    Proven for n <= 5 (and for lam in {0, 1/2, 1} in general); failures
    there are build-failing, larger n is explore-only.
    """
    prof = _profile(K, profile)
    grid = default_lambda_grid() if lam_grid is None else np.asarray(lam_grid)
    n = prof.n
    j = np.arange(n + 1)
    binom = np.array([comb(n, int(i)) for i in j], dtype=float)
    normalized = prof.values / prof.vol
    out = []
    for lam in grid:
        weights = lam ** j * (1.0 - lam) ** (n - j)
        lhs = float(np.sum(binom * weights * normalized))
        rhs = float(np.sum(binom ** 2 * weights))
        out.append(InequalityReport(
            "UNBALANCED", (K.label,), {"n": n, "lambda": float(lam)},
            lhs, rhs))
    return out


# ---------------------------------------------------------------------------
# statements about constructed bodies and body pairs


def verify_secproj(T: VPolytope, E: AffineSubspace):
    """vol(P_{E_perp} T) vol(T ∩ E) <= C(m, j) vol(T) for dim-j E."""
    m, jdim = T.dim, E.subdim
    sec = section(T, E)
    _, _, vt = np.linalg.svd(E.basis)
    complement = AffineSubspace(m, np.zeros(m), vt[jdim:])
    proj = project(T, complement)
    lhs = volume(sec) * volume(proj)
    return InequalityReport(
        "RS_SECPROJ", (T.label,),
        {"m": m, "j": jdim, "section_vol": volume(sec),
         "projection_vol": volume(proj)},
        lhs, comb(m, jdim) * volume(T))


def verify_strange(K: VPolytope, L: VPolytope):
    """vol(conv(K u -L)) vol((K* + L*)*) <= vol(K) vol(L), 0 interior."""
    K2, shift_k = _ensure_origin_interior(K)
    L2, shift_l = _ensure_origin_interior(L)
    params = {"n": K.dim}
    if shift_k is not None:
        params["recentered_K"] = list(shift_k)
    if shift_l is not None:
        params["recentered_L"] = list(shift_l)
    lhs = (volume(conv_union(K2, negate(L2)))
           * volume(polar_sum_body(K2, L2)))
    return InequalityReport("STRANGE", (K.label, L.label), params,
                            lhs, volume(K2) * volume(L2))


def verify_milman_pajor(K: VPolytope, L: VPolytope):
    """vol(K ∩ -L) vol(K + L) >= vol(K) vol(L) for centroid-centered
    bodies; inputs are re-centered to their centroids first."""
    K2 = translate(K, -centroid(K))
    L2 = translate(L, -centroid(L))
    meet = h_to_v(intersect(v_to_h(K2), v_to_h(negate(L2))))
    rhs = volume(meet) * volume(minkowski_sum(K2, L2))
    return InequalityReport(
        "MILMAN_PAJOR", (K.label, L.label),
        {"n": K.dim, "recentered": True},
        volume(K2) * volume(L2), rhs)


def verify_remark_EL(K: VPolytope, lam_grid=None):
    """vol(conv((1-lam)K u -lam K)) <= vol(K) for 0 in K (re-centered)."""
    K2, shift = _ensure_origin_interior(K)
    grid = default_lambda_grid() if lam_grid is None else np.asarray(lam_grid)
    vol_k = volume(K2)
    out = []
    for lam in grid:
        lam = float(lam)
        if lam in (0.0, 1.0):
            lhs = vol_k
        else:
            lhs = volume(conv_union(scale(K2, 1.0 - lam),
                                    scale(K2, -lam)))
        params = {"n": K.dim, "lambda": lam}
        if shift is not None:
            params["recentered_K"] = list(shift)
        out.append(InequalityReport("REMARK_EL", (K.label,), params,
                                    lhs, vol_k))
    return out
