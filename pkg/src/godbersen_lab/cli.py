"""Command-line front end: gen / profile / verify / certificate / sweep.

Exit codes: 0 success, 1 a proven statement failed verification, 2 bad
input, 3 numerical failure.  The default seed comes from the
GODBERSEN_LAB_SEED environment variable.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys

import click
import numpy as np

from . import reporting, verifiers
from .certificate import certificate_grid
from .engine import mixed_volume_profile, profile_to_dict
from .errors import (
    BadSpec,
    DegenerateInput,
    DimensionMismatch,
    GeometryError,
    VerificationFailure,
)
from .kernel import body_to_dict, load_body
from .reporting import (
    RunConfig,
    load_config,
    run_sweep,
    write_certificates_csv,
    write_profiles_json,
    write_reports_csv,
    write_reports_jsonl,
)
from .zoo import BodySpec, generate, spec_from_dict

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_BAD_INPUT = 2
EXIT_NUMERICAL = 3

_BAD_INPUT = (BadSpec, DegenerateInput, DimensionMismatch, ValueError,
              KeyError, OSError, json.JSONDecodeError)


def _run(fn):
    try:
        fn()
    except VerificationFailure as exc:
        click.echo(f"VERIFICATION FAILURE: {exc}", err=True)
        sys.exit(EXIT_VERIFICATION)
    except _BAD_INPUT as exc:
        click.echo(f"bad input: {exc}", err=True)
        sys.exit(EXIT_BAD_INPUT)
    except GeometryError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)


def _spec_from_flags(body, dim, m, seed, k) -> BodySpec:
    if seed is None:
        seed = reporting.default_seed()
    gen = body.upper()
    needs_seed = gen in ("RANDOM_SPHERE", "RANDOM_GAUSS_HULL")
    return BodySpec(gen, dim, m=m, seed=seed if needs_seed else None, k=k)


@click.group()
def main():
    """Mixed-volume profiles and difference-body inequality verification."""


@main.command()
@click.option("--body", default=None,
              help="generator name (SIMPLEX, CUBE, CROSS, RANDOM_SPHERE, "
                   "RANDOM_GAUSS_HULL, REULEAUX_POLY)")
@click.option("--dim", type=int, default=None)
@click.option("--m", type=int, default=None, help="vertex count (random)")
@click.option("--seed", type=int, default=None, envvar="GODBERSEN_LAB_SEED")
@click.option("--k", type=int, default=None, help="Reuleaux arc count")
@click.option("--spec", "spec_file", type=click.Path(exists=True),
              default=None, help="BodySpec JSON instead of flags")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="body JSON path (stdout when omitted)")
def gen(body, dim, m, seed, k, spec_file, out):
    """Generate a zoo body and emit it in the body JSON format."""
    def work():
        if spec_file is not None:
            with open(spec_file, encoding="utf-8") as fh:
                spec = spec_from_dict(json.load(fh))
        elif body is not None and dim is not None:
            spec = _spec_from_flags(body, dim, m, seed, k)
        else:
            raise BadSpec("provide --spec FILE or both --body and --dim")
        made = generate(spec)
        text = json.dumps(body_to_dict(made))
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
            click.echo(out)
        else:
            click.echo(text)
    _run(work)


def _resolve_body(body, dim, m, seed, k, infile):
    if infile is not None:
        return load_body(infile)
    if body is None or dim is None:
        raise BadSpec("provide --in FILE or both --body and --dim")
    return generate(_spec_from_flags(body, dim, m, seed, k))


@main.command()
@click.option("--body", default=None)
@click.option("--dim", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--seed", type=int, default=None, envvar="GODBERSEN_LAB_SEED")
@click.option("--k", type=int, default=None)
@click.option("--in", "infile", type=click.Path(exists=True), default=None,
              help="body JSON file instead of a generator")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--figures/--no-figures", default=True)
def profile(body, dim, m, seed, k, infile, out, figures):
    """Extract the mixed-volume profile V_0..V_n of one body."""
    def work():
        made = _resolve_body(body, dim, m, seed, k, infile)
        prof = profile_to_dict(mixed_volume_profile(made))
        prof["label"] = made.label
        text = json.dumps(prof)
        if out:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
            click.echo(out)
            if figures:
                from .plots import plot_single_profile
                fig_path = os.path.splitext(out)[0] + ".png"
                click.echo(plot_single_profile(prof, fig_path))
        else:
            click.echo(text)
    _run(work)


def _config_from_options(config, body, dim, m, seed, k, lambda_grid, jobs):
    if config is not None:
        cfg = load_config(config)
    elif body is not None and dim is not None:
        cfg = RunConfig(bodies=(_spec_from_flags(body, dim, m, seed, k),))
    else:
        cfg = RunConfig(seed=seed)
    if lambda_grid is not None:
        cfg = dataclasses.replace(cfg, lambda_count=lambda_grid)
    if jobs:
        cfg = dataclasses.replace(cfg, jobs=jobs)
    return cfg


def _write_sweep_outputs(result, outdir, figures) -> None:
    os.makedirs(outdir, exist_ok=True)
    write_reports_jsonl(result.reports, os.path.join(outdir, "reports.jsonl"))
    write_reports_csv(result.reports, os.path.join(outdir, "reports.csv"))
    write_certificates_csv(result.certificates,
                           os.path.join(outdir, "certificates.csv"))
    write_profiles_json(result.profiles,
                        os.path.join(outdir, "profiles.json"))
    if result.candidates:
        path = os.path.join(outdir, "candidates.jsonl")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for entry in result.candidates:
                fh.write(json.dumps(entry, sort_keys=True) + "\n")
        click.echo(f"conjecture counterexample candidates logged: {path}",
                   err=True)
    if figures:
        from .plots import (plot_certificates, plot_margin_curves,
                            plot_ratio_profiles)
        plot_margin_curves(result.reports, outdir)
        plot_ratio_profiles(result.profiles, outdir)
        plot_certificates(result.certificates, outdir)


@main.command()
@click.option("--config", type=click.Path(exists=True), default=None,
              help="RunConfig JSON")
@click.option("--body", default=None)
@click.option("--dim", type=int, default=None)
@click.option("--m", type=int, default=None)
@click.option("--seed", type=int, default=None, envvar="GODBERSEN_LAB_SEED")
@click.option("--k", type=int, default=None)
@click.option("--lambda-grid", type=int, default=None,
              help="number of uniform lambda nodes (default 21)")
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--figures/--no-figures", default=True)
def verify(config, body, dim, m, seed, k, lambda_grid, out, jobs, figures):
    """Verify the inequality matrix; nonzero exit if a theorem fails."""
    def work():
        cfg = _config_from_options(config, body, dim, m, seed, k,
                                   lambda_grid, jobs)
        outdir = out or cfg.out or "reports"
        result = run_sweep(cfg)
        _write_sweep_outputs(result, outdir, figures)
        n_proven = sum(1 for r in result.reports if verifiers.is_proven(r))
        click.echo(f"{len(result.reports)} reports "
                   f"({n_proven} proven statements, all passed) -> {outdir}")
    _run(work)


@main.command()
@click.option("--n", "n", required=True, type=click.IntRange(4, 5))
@click.option("--grid", type=int, default=1001, help="lambda grid size")
@click.option("--out", type=click.Path(dir_okay=False),
              default="certificate.csv")
@click.option("--figures/--no-figures", default=True)
def certificate(n, grid, out, figures):
    """Reproduce the (a, b) certificate systems on a lambda grid."""
    def work():
        rows = certificate_grid(n, np.linspace(0.0, 1.0, grid))
        write_certificates_csv(rows, out)
        click.echo(out)
        if figures:
            from .plots import plot_certificates
            outdir = os.path.dirname(os.path.abspath(out))
            for p in plot_certificates(rows, outdir):
                click.echo(p)
        bad = [r for r in rows if not (r.valid or r.boundary)]
        if bad:
            raise VerificationFailure(
                f"certificate invalid at {len(bad)} lambda values")
    _run(work)


@main.command()
@click.option("--config", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=None, envvar="GODBERSEN_LAB_SEED")
@click.option("--lambda-grid", type=int, default=None)
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.option("--jobs", type=int, default=None)
@click.option("--figures/--no-figures", default=True)
def sweep(config, seed, lambda_grid, out, jobs, figures):
    """Run the full acceptance matrix over the built-in zoo."""
    def work():
        cfg = _config_from_options(config, None, None, None, seed, None,
                                   lambda_grid, jobs)
        outdir = out or cfg.out or "sweep_out"
        result = run_sweep(cfg)
        _write_sweep_outputs(result, outdir, figures)
        click.echo(f"{len(result.reports)} reports, "
                   f"{len(result.certificates)} certificate rows -> {outdir}")
    _run(work)


if __name__ == "__main__":  # pragma: no cover
    main()
