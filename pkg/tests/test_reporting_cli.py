import json
import os

import pytest
from click.testing import CliRunner

from godbersen_lab.cli import main
from godbersen_lab.errors import VerificationFailure
from godbersen_lab.reporting import (
    RunConfig,
    certificates_csv_text,
    config_from_dict,
    config_to_dict,
    reports_csv_text,
    run_sweep,
)
from godbersen_lab.verifiers import is_proven
from godbersen_lab.zoo import BodySpec

SMALL = RunConfig(bodies=(BodySpec("SIMPLEX", 2),
                          BodySpec("CUBE", 2),
                          BodySpec("RANDOM_SPHERE", 2, m=8, seed=5)),
                  lambda_count=7)


def test_run_sweep_small_config_all_proven_pass():
    result = run_sweep(SMALL)
    assert result.reports
    assert all(r.passed for r in result.reports if is_proven(r))
    assert result.certificates  # n = 4, 5 rows always included
    assert set(result.profiles) == {"simplex_2", "cube_2",
                                    "random_sphere_2_m8_s5"}


def test_run_sweep_reports_sorted_and_repeatable():
    a = run_sweep(SMALL)
    b = run_sweep(SMALL)
    assert reports_csv_text(a.reports) == reports_csv_text(b.reports)
    assert certificates_csv_text(a.certificates) == \
        certificates_csv_text(b.certificates)


def test_run_sweep_parallel_matches_serial():
    import dataclasses
    serial = run_sweep(SMALL)
    parallel = run_sweep(dataclasses.replace(SMALL, jobs=2))
    assert reports_csv_text(serial.reports) == \
        reports_csv_text(parallel.reports)


def test_tol_override_can_force_failure():
    # a negative tolerance scale demands strictly positive margins, which
    # equality cases cannot deliver: the sweep must abort loudly
    import dataclasses
    cfg = dataclasses.replace(SMALL, tol_scale=-1.0)
    with pytest.raises(VerificationFailure):
        run_sweep(cfg)


def test_config_json_round_trip():
    data = config_to_dict(SMALL)
    back = config_from_dict(json.loads(json.dumps(data)))
    assert back == SMALL


def test_csv_float_format_fixed_digits():
    text = reports_csv_text(run_sweep(SMALL).reports)
    line = text.splitlines()[1]
    assert "," in line
    # no scientific float surprises in the header
    assert text.startswith(
        "statement_id,body,n,j,lambda,lhs,rhs,margin,passed")


# ---------------------------------------------------------------------------
# CLI


def test_cli_gen_and_profile(tmp_path):
    runner = CliRunner()
    body_path = tmp_path / "body.json"
    res = runner.invoke(main, ["gen", "--body", "SIMPLEX", "--dim", "3",
                               "--out", str(body_path)])
    assert res.exit_code == 0, res.output
    data = json.loads(body_path.read_text())
    assert data["dim"] == 3 and len(data["vertices"]) == 4

    prof_path = tmp_path / "prof.json"
    res = runner.invoke(main, ["profile", "--in", str(body_path),
                               "--out", str(prof_path), "--no-figures"])
    assert res.exit_code == 0, res.output
    prof = json.loads(prof_path.read_text())
    assert prof["n"] == 3
    assert prof["V"] == pytest.approx([1 / 6, 1 / 2, 1 / 2, 1 / 6],
                                      rel=1e-9)


def test_cli_profile_writes_figure(tmp_path):
    runner = CliRunner()
    prof_path = tmp_path / "prof.json"
    res = runner.invoke(main, ["profile", "--body", "CUBE", "--dim", "2",
                               "--out", str(prof_path)])
    assert res.exit_code == 0, res.output
    assert (tmp_path / "prof.png").exists()


def test_cli_certificate(tmp_path):
    runner = CliRunner()
    out = tmp_path / "cert.csv"
    res = runner.invoke(main, ["certificate", "--n", "4", "--grid", "101",
                               "--out", str(out), "--no-figures"])
    assert res.exit_code == 0, res.output
    lines = out.read_text().splitlines()
    assert lines[0] == "n,lambda,a,b,det,valid"
    assert len(lines) == 102
    a_vals = [float(line.split(",")[2]) for line in lines[1:]]
    assert min(a_vals) >= -1e-12


def test_cli_verify_single_body(tmp_path):
    runner = CliRunner()
    out = tmp_path / "rep"
    res = runner.invoke(main, ["verify", "--body", "SIMPLEX", "--dim", "2",
                               "--lambda-grid", "5", "--out", str(out),
                               "--no-figures"])
    assert res.exit_code == 0, res.output
    assert (out / "reports.csv").exists()
    assert (out / "reports.jsonl").exists()


def test_cli_verify_writes_figures(tmp_path):
    runner = CliRunner()
    out = tmp_path / "rep"
    res = runner.invoke(main, ["verify", "--body", "CUBE", "--dim", "2",
                               "--lambda-grid", "5", "--out", str(out)])
    assert res.exit_code == 0, res.output
    figs = [p for p in os.listdir(out) if p.endswith(".png")]
    assert figs, "report path must render figures next to the CSV"


def test_cli_bad_input_exit_code():
    runner = CliRunner()
    res = runner.invoke(main, ["gen", "--body", "BOGUS", "--dim", "3"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["gen", "--dim", "3"])
    assert res.exit_code == 2


def test_cli_gen_from_spec_file(tmp_path):
    from godbersen_lab.zoo import spec_to_dict
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps(spec_to_dict(
        BodySpec("RANDOM_SPHERE", 3, m=9, seed=11))))
    runner = CliRunner()
    res = runner.invoke(main, ["gen", "--spec", str(spec_path)])
    assert res.exit_code == 0, res.output
    data = json.loads(res.output)
    assert data["dim"] == 3 and len(data["vertices"]) == 9


def test_cli_degenerate_body_json_exit_code(tmp_path):
    flat = tmp_path / "flat.json"
    flat.write_text(json.dumps({
        "dim": 3,
        "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]],
        "label": "flat"}))
    runner = CliRunner()
    res = runner.invoke(main, ["profile", "--in", str(flat)])
    assert res.exit_code == 2


def test_cli_verification_failure_exit_code(tmp_path):
    # a negative tolerance scale turns equality cases into failures
    cfg = config_to_dict(SMALL) | {"tol_scale": -1.0}
    cfg_path = tmp_path / "bad.json"
    cfg_path.write_text(json.dumps(cfg))
    runner = CliRunner()
    res = runner.invoke(main, ["verify", "--config", str(cfg_path),
                               "--out", str(tmp_path / "out"),
                               "--no-figures"])
    assert res.exit_code == 1


def test_cli_env_seed_controls_random_bodies(tmp_path):
    runner = CliRunner()
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    res = runner.invoke(main, ["gen", "--body", "RANDOM_SPHERE", "--dim",
                               "2", "--m", "6", "--out", str(out1)],
                        env={"GODBERSEN_LAB_SEED": "7"})
    assert res.exit_code == 0, res.output
    res = runner.invoke(main, ["gen", "--body", "RANDOM_SPHERE", "--dim",
                               "2", "--m", "6", "--out", str(out2)],
                        env={"GODBERSEN_LAB_SEED": "8"})
    assert res.exit_code == 0, res.output
    assert out1.read_text() != out2.read_text()


def test_explore_candidates_log_body_json():
    from godbersen_lab.reporting import explore_candidates
    from godbersen_lab.verifiers import InequalityReport
    from godbersen_lab.zoo import generate
    body = generate(BodySpec("SIMPLEX", 2))
    fake = InequalityReport("GODBERSEN_J", (body.label,),
                            {"n": 2, "j": 1}, 2.0, 1.0)  # negative margin
    proven = InequalityReport("THM1", (body.label,),
                              {"n": 2, "lambda": 0.5}, 2.0, 1.0)
    noise = InequalityReport("GODBERSEN_J", (body.label,),
                             {"n": 2, "j": 1}, 1.0 + 1e-15, 1.0)
    entries = explore_candidates([fake, proven, noise],
                                 {body.label: body})
    # proven failures and equality-case float noise are not candidates
    assert len(entries) == 1
    assert entries[0]["report"]["statement_id"] == "GODBERSEN_J"
    assert entries[0]["bodies"][0]["dim"] == 2


def test_run_sweep_finds_no_candidates_on_zoo():
    assert run_sweep(SMALL).candidates == []


def test_cli_sweep_with_config(tmp_path):
    runner = CliRunner()
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config_to_dict(SMALL)))
    out = tmp_path / "out"
    res = runner.invoke(main, ["sweep", "--config", str(cfg_path),
                               "--out", str(out), "--no-figures"])
    assert res.exit_code == 0, res.output
    for name in ("reports.csv", "reports.jsonl", "certificates.csv",
                 "profiles.json"):
        assert (out / name).exists()


def test_cli_sweep_figures(tmp_path):
    runner = CliRunner()
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(config_to_dict(SMALL)))
    out = tmp_path / "out"
    res = runner.invoke(main, ["sweep", "--config", str(cfg_path),
                               "--out", str(out)])
    assert res.exit_code == 0, res.output
    names = set(os.listdir(out))
    assert "fig_godbersen_ratios.png" in names
    assert "fig_certificate_n4.png" in names
    assert any(n.startswith("fig_thm1") for n in names)
