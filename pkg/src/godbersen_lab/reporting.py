"""Run configuration, the sweep runner, and deterministic file output.

A RunConfig plus the code version determines every output byte: bodies
come from seeded specs, reports are sorted by a canonical key, floats are
written with 17 significant digits in CSV and shortest-round-trip repr in
JSON.  Workers only share immutable inputs, so a parallel sweep merges to
the same files as a serial one.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import verifiers
from .certificate import certificate_grid, verify_certificate_combination
from .engine import mixed_volume_profile, profile_to_dict
from .errors import VerificationFailure
from .kernel import body_to_dict, coordinate_subspace
from .verifiers import (
    InequalityReport,
    STATEMENTS,
    is_proven,
)
from .zoo import (BodySpec, centroid, default_zoo, generate,
                  spec_from_dict, spec_to_dict)

DEFAULT_SEED = 2024
PAIR_STATEMENT_MAX_DIM = 3  # STRANGE / MILMAN_PAJOR body pairs
CERTIFICATE_DIMS = (4, 5)

__all__ = ["RunConfig", "SweepResult", "run_sweep", "default_seed",
           "write_reports_csv", "write_reports_jsonl",
           "write_certificates_csv", "explore_candidates",
           "config_to_dict", "config_from_dict", "load_config"]


def default_seed() -> int:
    env = os.environ.get("GODBERSEN_LAB_SEED")
    return int(env) if env else DEFAULT_SEED


@dataclass(frozen=True)
class RunConfig:
    """Fully serializable description of a verification run."""

    bodies: tuple[BodySpec, ...] = ()
    statements: tuple[str, ...] = STATEMENTS
    lambda_count: int = 21
    tol_scale: float | None = None     # override of the pass/fail scale
    seed: int | None = None
    jobs: int = 1
    dims: tuple[int, ...] = (2, 3, 4, 5)
    out: str | None = None             # default output directory

    def resolved_bodies(self) -> tuple[BodySpec, ...]:
        if self.bodies:
            return self.bodies
        seed = self.seed if self.seed is not None else default_seed()
        return tuple(default_zoo(self.dims, seed))

    def lambda_grid(self) -> np.ndarray:
        return verifiers.default_lambda_grid(self.lambda_count)


def config_to_dict(config: RunConfig) -> dict:
    return {
        "bodies": [spec_to_dict(s) for s in config.bodies],
        "statements": list(config.statements),
        "lambda_count": config.lambda_count,
        "tol_scale": config.tol_scale,
        "seed": config.seed,
        "jobs": config.jobs,
        "dims": list(config.dims),
        "out": config.out,
    }


def config_from_dict(data: dict) -> RunConfig:
    return RunConfig(
        bodies=tuple(spec_from_dict(s) for s in data.get("bodies", [])),
        statements=tuple(data.get("statements", STATEMENTS)),
        lambda_count=int(data.get("lambda_count", 21)),
        tol_scale=data.get("tol_scale"),
        seed=data.get("seed"),
        jobs=int(data.get("jobs", 1)),
        dims=tuple(data.get("dims", (2, 3, 4, 5))),
        out=data.get("out"),
    )


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


@dataclass
class SweepResult:
    reports: list[InequalityReport]
    certificates: list
    profiles: dict[str, dict]
    candidates: list[dict] = field(default_factory=list)


def explore_candidates(reports, bodies_by_label: dict) -> list[dict]:
    """Counterexample candidates from explore-mode statements.

    A conjecture report whose margin is negative beyond tolerance never
    fails the run; it is logged with the full body JSON so the candidate
    can be reproduced.  The tolerance matters: equality cases (simplices
    saturate the conjectured bounds) sit at margin 0 up to float noise
    and must not be flagged.
    """
    out = []
    for r in sorted(reports, key=_sort_key):
        if is_proven(r) or r.passed:
            continue
        entry = {"report": verifiers.report_to_dict(r)}
        for label in r.body_labels:
            if label in bodies_by_label:
                entry.setdefault("bodies", []).append(
                    body_to_dict(bodies_by_label[label]))
        out.append(entry)
    return out


def _single_body_reports(spec_dict: dict, statements: tuple[str, ...],
                         lams: list[float]) -> tuple[dict, list[dict]]:
    """Worker task: all single-body statements for one spec (picklable)."""
    spec = spec_from_dict(spec_dict)
    body = generate(spec)
    n = body.dim
    prof = mixed_volume_profile(body)
    grid = np.asarray(lams)
    reports: list[InequalityReport] = []
    if "THM1" in statements:
        reports += verifiers.verify_theorem_sum(body, grid, prof)
    if "LEM2" in statements:
        reports += verifiers.verify_lemma_C(body, grid, prof)
    if "COR3" in statements:
        reports.append(verifiers.verify_average_corollary(body, prof))
    if "COR4" in statements and n >= 2:
        k = max(1, (n - 1) // 2 + (n - 1) % 2)  # median bound: k = ceil((n-1)/2)
        reports.append(verifiers.verify_markov_corollary(body, k, prof))
    if "RS_DIFF" in statements:
        reports.append(verifiers.verify_rs_difference(body, prof))
    if "ALEXANDROV_J" in statements:
        reports += verifiers.verify_alexandrov(body, prof)
    if "GODBERSEN_J" in statements and n >= 2:
        reports += verifiers.godbersen_reports(body, prof)
    if "UNBALANCED" in statements:
        reports += verifiers.verify_unbalanced(body, grid, prof)
        if n in CERTIFICATE_DIMS:
            for lam in grid:
                reports.append(
                    verify_certificate_combination(n, float(lam), prof))
    if "REMARK_EL" in statements:
        reports += verifiers.verify_remark_EL(body, grid)
    if "RS_SECPROJ" in statements and n >= 2:
        j = n // 2
        E = coordinate_subspace(n, range(j), point=centroid(body))
        reports.append(verifiers.verify_secproj(body, E))
    return profile_to_dict(prof) | {"label": body.label}, \
        [verifiers.report_to_dict(r) for r in reports]


def _report_from_dict(data: dict) -> InequalityReport:
    return InequalityReport(data["statement_id"],
                            tuple(data["body_labels"]),
                            data["parameters"], data["lhs"], data["rhs"])


def _sort_key(report: InequalityReport):
    p = report.parameters
    return (report.statement_id, "|".join(report.body_labels),
            p.get("n", -1), p.get("m", -1), p.get("j", -1),
            p.get("k", -1), p.get("lambda", -1.0), p.get("via", ""))


def run_sweep(config: RunConfig) -> SweepResult:
    """Evaluate the configured statement matrix over the configured zoo.

    Raises VerificationFailure if any numerically proven statement fails;
    conjecture statements only log their counterexample candidates.
    """
    specs = config.resolved_bodies()
    lams = [float(x) for x in config.lambda_grid()]
    spec_dicts = [spec_to_dict(s) for s in specs]
    statements = tuple(config.statements)

    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(
                _single_body_reports, spec_dicts,
                [statements] * len(spec_dicts), [lams] * len(spec_dicts)))
    else:
        results = [_single_body_reports(sd, statements, lams)
                   for sd in spec_dicts]

    reports: list[InequalityReport] = []
    profiles: dict[str, dict] = {}
    for prof_dict, report_dicts in results:
        profiles[prof_dict["label"]] = prof_dict
        reports += [_report_from_dict(rd) for rd in report_dicts]

    # body-pair statements at low dimension (hull cost grows with 2n)
    pair_stmts = {"STRANGE", "MILMAN_PAJOR"} & set(statements)
    if pair_stmts:
        by_dim: dict[int, list[BodySpec]] = {}
        for spec in specs:
            by_dim.setdefault(spec.dim, []).append(spec)
        for dim, group in sorted(by_dim.items()):
            if dim > PAIR_STATEMENT_MAX_DIM:
                continue
            made = [generate(s) for s in group]
            for K, L in zip(made, made[1:]):
                if "STRANGE" in pair_stmts:
                    reports.append(verifiers.verify_strange(K, L))
                if "MILMAN_PAJOR" in pair_stmts:
                    reports.append(verifiers.verify_milman_pajor(K, L))

    certs = []
    for n in CERTIFICATE_DIMS:
        certs += certificate_grid(n, lams)

    reports.sort(key=_sort_key)
    tol_scale = config.tol_scale
    failures = []
    for r in reports:
        passed = r.passed if tol_scale is None else \
            r.margin >= -tol_scale * max(1.0, r.rhs)
        if is_proven(r) and not passed:
            failures.append(r)
    if failures:
        worst = min(failures, key=lambda r: r.margin)
        raise VerificationFailure(
            f"{len(failures)} proven-statement report(s) failed; worst: "
            f"{worst.statement_id} on {worst.body_labels} "
            f"margin={worst.margin:.3e}")
    candidates = []
    if any(not is_proven(r) and not r.passed for r in reports):
        bodies = {spec.label(): generate(spec) for spec in specs}
        candidates = explore_candidates(reports, bodies)
    return SweepResult(reports, certs, profiles, candidates)


# ---------------------------------------------------------------------------
# deterministic writers


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def reports_csv_text(reports) -> str:
    lines = ["statement_id,body,n,j,lambda,lhs,rhs,margin,passed"]
    for r in sorted(reports, key=_sort_key):
        p = r.parameters
        lam = p.get("lambda")
        lines.append(",".join([
            r.statement_id,
            "|".join(r.body_labels),
            str(p.get("n", "")),
            str(p.get("j", "")),
            _fmt(lam) if lam is not None else "",
            _fmt(r.lhs), _fmt(r.rhs), _fmt(r.margin), _fmt(r.passed),
        ]))
    return "\n".join(lines) + "\n"


def write_reports_csv(reports, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(reports_csv_text(reports))


def write_reports_jsonl(reports, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in sorted(reports, key=_sort_key):
            fh.write(json.dumps(verifiers.report_to_dict(r),
                                sort_keys=True))
            fh.write("\n")


def certificates_csv_text(certs) -> str:
    lines = ["n,lambda,a,b,det,valid"]
    for c in certs:
        lines.append(",".join([
            str(c.n), _fmt(c.lam), _fmt(c.a), _fmt(c.b), _fmt(c.det),
            _fmt(c.valid),
        ]))
    return "\n".join(lines) + "\n"


def write_certificates_csv(certs, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(certificates_csv_text(certs))


def write_profiles_json(profiles: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump({k: profiles[k] for k in sorted(profiles)}, fh, indent=2,
                  sort_keys=True)
        fh.write("\n")

