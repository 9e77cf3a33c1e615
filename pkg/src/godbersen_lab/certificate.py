"""The n = 4, 5 certificate for the unbalanced difference-body inequality.

For n = 4 and 5 the target inequality is a nonnegative combination of two
known ones.  After dropping the equal end terms and folding the j-th and
(n-j)-th terms (pairs count twice, an even middle term once), both known
inequalities and the target reduce to two folded indices j = 1, 2, and
matching coefficients gives a 2x2 linear system for the combination
weights (a, b).  This module rebuilds those systems, solves them by the
explicit adjugate, verifies nonnegativity and (for n = 4) the determinant
factorization 2 lam (1-lam) [3 (1-2 lam)^2 + 2 lam (1-lam)].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .engine import MixedVolumeProfile
from .verifiers import InequalityReport

NONNEG_TOL = 1e-12

__all__ = ["CertificateResult", "ExploreResult", "certificate",
           "certificate_grid", "explore_certificate",
           "verify_certificate_combination", "symmetric_weight_monotonicity",
           "reduced_system"]


@dataclass(frozen=True)
class CertificateResult:
    n: int
    lam: float
    a: float
    b: float
    det: float
    det_factored: float
    valid: bool
    boundary: bool = False


def _folded_weight(n: int, j: int, lam: float) -> float:
    """lam^j (1-lam)^{n-j} + lam^{n-j} (1-lam)^j, halved for j = n/2."""
    w = lam ** j * (1 - lam) ** (n - j) + lam ** (n - j) * (1 - lam) ** j
    if 2 * j == n:
        w /= 2.0
    return w


def reduced_system(n: int, lam: float):
    """Matrix and right side of the paper-level 2x2 system in (a, b).

    Row 1 matches the folded-index-1 coefficients, row 2 the
    folded-index-2 coefficients; the right side is the target (simplex)
    coefficient C(n,j) times the folded blend weight.
    """
    if n not in (4, 5):
        raise ValueError("certificate systems exist for n = 4, 5 only")
    w1 = _folded_weight(n, 1, lam)
    w2 = _folded_weight(n, 2, lam)
    if n == 4:
        matrix = np.array([[w1, 8.0], [w2, 6.0]])
        rhs = np.array([4.0 * w1, 6.0 * w2])
    else:
        matrix = np.array([[w1, 5.0], [w2, 10.0]])
        rhs = np.array([5.0 * w1, 10.0 * w2])
    return matrix, rhs


def certificate(n: int, lam: float) -> CertificateResult:
    """Solve the 2x2 system by the explicit adjugate.

    At lam in {0, 1} the system is singular; the continuity limit
    (a, b) = (n, 0) is returned, flagged as a boundary case.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    matrix, rhs = reduced_system(n, lam)
    det = float(matrix[0, 0] * matrix[1, 1] - matrix[0, 1] * matrix[1, 0])
    if n == 4:
        det_factored = (2.0 * lam * (1.0 - lam)
                        * (3.0 * (1.0 - 2.0 * lam) ** 2
                           + 2.0 * lam * (1.0 - lam)))
    else:
        det_factored = det
    if det <= 0.0:
        # singular only at the endpoints, where the target is an equality
        return CertificateResult(n, lam, float(n), 0.0, det, det_factored,
                                 valid=False, boundary=True)
    a = float((matrix[1, 1] * rhs[0] - matrix[0, 1] * rhs[1]) / det)
    b = float((-matrix[1, 0] * rhs[0] + matrix[0, 0] * rhs[1]) / det)
    valid = a >= -NONNEG_TOL and b >= -NONNEG_TOL and det > 0.0
    return CertificateResult(n, lam, a, b, det, det_factored, valid)


def certificate_grid(n: int, lams) -> list[CertificateResult]:
    return [certificate(n, float(lam)) for lam in np.asarray(lams)]


def verify_certificate_combination(n: int, lam: float,
                                   profile: MixedVolumeProfile
                                   ) -> InequalityReport:
    """Check the combination argument on a concrete profile.

    The coefficient identity a * row_thm1 + b * row_rs = row_target holds
    by construction (residual recorded); with a, b >= 0 and both known
    inequalities valid for the profile, the target reduced inequality
    follows, and it is confirmed directly.
    """
    if profile.n != n:
        raise ValueError("profile dimension does not match n")
    cert = certificate(n, lam)
    matrix, rhs = reduced_system(n, lam)
    residual = float(np.max(np.abs(matrix @ np.array([cert.a, cert.b])
                                   - rhs)))
    v1 = profile.values[1] / profile.vol
    v2 = profile.values[2] / profile.vol
    w1, w2 = matrix[0, 0], matrix[1, 0]
    c1, c2 = comb(n, 1), comb(n, 2)
    rs_w1, rs_w2 = matrix[0, 1], matrix[1, 1]
    known_thm1 = (w1 * c1 + w2 * c2) - (w1 * v1 + w2 * v2)
    known_rs = (rs_w1 * c1 + rs_w2 * c2) - (rs_w1 * v1 + rs_w2 * v2)
    lhs = c1 * w1 * v1 + c2 * w2 * v2
    target_rhs = c1 ** 2 * w1 + c2 ** 2 * w2
    return InequalityReport(
        "UNBALANCED", (profile.label,),
        {"n": n, "lambda": lam, "via": "certificate",
         "a": cert.a, "b": cert.b, "system_residual": residual,
         "thm1_margin": known_thm1, "rs_margin": known_rs,
         "boundary": cert.boundary},
        lhs, target_rhs)


def symmetric_weight_monotonicity(n: int, lam: float,
                                  tol: float = 1e-12) -> bool:
    """Is lam^j (1-lam)^{n-j} + lam^{n-j} (1-lam)^j nonincreasing on
    j = 0..floor(n/2)?  Used inside the n = 5 positivity argument."""
    seq = [lam ** j * (1 - lam) ** (n - j) + lam ** (n - j) * (1 - lam) ** j
           for j in range(n // 2 + 1)]
    return all(seq[j + 1] <= seq[j] + tol for j in range(len(seq) - 1))


@dataclass(frozen=True)
class ExploreResult:
    """Exploratory n >= 6 record; never asserted.

    The two known inequalities can match the target coefficients exactly
    only at the folded indices 1 and 2; ``mismatches`` holds the leftover
    coefficient gaps at j = 3..floor(n/2), so the record shows exactly
    where the two-inequality construction stops certifying.
    """

    n: int
    lam: float
    a: float
    b: float
    det: float
    nonnegative: bool
    mismatches: tuple[float, ...]
    certifies: bool


def explore_certificate(n: int, lam: float) -> ExploreResult:
    """Attempt the two-inequality combination for general n >= 4."""
    if n < 4:
        raise ValueError("the reduced construction needs n >= 4")
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    if n in (4, 5):
        cert = certificate(n, lam)
        return ExploreResult(n, lam, cert.a, cert.b, cert.det,
                             cert.a >= -NONNEG_TOL and cert.b >= -NONNEG_TOL,
                             (), cert.valid or cert.boundary)
    half = n // 2
    omega = [_folded_weight(n, j, lam) for j in range(1, half + 1)]
    rho = [(1.0 if 2 * j == n else 2.0) * comb(n, j)
           for j in range(1, half + 1)]
    matrix = np.array([[omega[0], rho[0]], [omega[1], rho[1]]])
    rhs = np.array([comb(n, 1) * omega[0], comb(n, 2) * omega[1]])
    det = float(np.linalg.det(matrix))
    if abs(det) < 1e-15:
        return ExploreResult(n, lam, float(n), 0.0, det, True, (), False)
    a, b = np.linalg.solve(matrix, rhs)
    mismatches = tuple(
        float(a * omega[j - 1] + b * rho[j - 1] - comb(n, j) * omega[j - 1])
        for j in range(3, half + 1))
    nonneg = a >= -NONNEG_TOL and b >= -NONNEG_TOL
    certifies = nonneg and all(abs(m) <= NONNEG_TOL for m in mismatches)
    return ExploreResult(n, lam, float(a), float(b), det, nonneg,
                         mismatches, certifies)
