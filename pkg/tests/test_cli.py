import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "hyperthresh.cli"]


def run_cli(*args, expect_ok=True):
    proc = subprocess.run([*CLI, *args], capture_output=True, text=True)
    if expect_ok:
        assert proc.returncode == 0, proc.stderr
    return proc


def test_quad_prints_csv_and_defect_on_stderr():
    proc = run_cli("quad", "--points", "2", "--verify", "3")
    lines = proc.stdout.strip().split("\n")
    assert lines[0] == "index,node,weight"
    assert len(lines) == 3
    assert lines[1].startswith("0,-0.577350269")
    assert "exactness defect" in proc.stderr


def test_prox_lq_reports_threshold_and_iterations():
    proc = run_cli("prox", "--op", "lq", "--y", "2", "--lambda", "1", "--q", "0.5")
    assert "value=1.814402018" in proc.stdout
    assert "threshold_a=0.944940787" in proc.stdout
    assert "iterations=" in proc.stdout


def test_prox_verify_shows_oracle_difference():
    proc = run_cli(
        "prox", "--op", "springback", "--y", "0.9", "--lambda", "0.6", "--alpha", "1", "--verify"
    )
    assert "value=0.75" in proc.stdout
    assert "oracle=" in proc.stdout
    assert "difference=" in proc.stdout


def test_sparsity_reads_coefficient_file(tmp_path):
    coeffs = tmp_path / "alpha.txt"
    coeffs.write_text("3.0, 2.0\n1.0 0.5\n")
    proc = run_cli("sparsity", "--coeffs", str(coeffs), "--q", "0.5", "--k", "2")
    assert "support_size=1" in proc.stdout
    assert "guaranteed_bound=1" in proc.stdout


def test_bounds_flip_prints_csv():
    proc = run_cli("bounds", "--check", "flip", "--trials", "2000", "--seed", "3")
    lines = proc.stdout.strip().split("\n")
    assert lines[0] == "parameter,analytic_bound,empirical_rate,within_slack"
    assert len(lines) == 11  # ten default gap points


def test_recover_writes_byte_identical_reports(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    args = [
        "recover", "--sigma", "0.15", "--trials", "5", "--seed", "7",
        "--n", "41", "--dim", "30", "--sparsity", "4",
    ]
    run_cli(*args, "--out", str(out1))
    run_cli(*args, "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("method,l2_error")


def test_recover_config_file_with_flag_override(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"points": 41, "dim": 30, "sparsity": 4, "trials": 3, "sigma": 0.3}))
    out = tmp_path / "r.json"
    proc = run_cli(
        "recover", "--config", str(config), "--trials", "2", "--seed", "1",
        "--out", str(out), "--format", "json",
    )
    payload = json.loads(out.read_text())
    assert payload["rows"][0]["trials"] == 2  # flag overrode the file
    assert proc.stdout.startswith("method,")


def test_denoise_writes_three_outputs(tmp_path):
    curves = tmp_path / "c.csv"
    svg = tmp_path / "c.svg"
    metrics = tmp_path / "m.csv"
    run_cli(
        "denoise", "--seed", "2", "--grid", "200",
        "--out-curves", str(curves), "--out-svg", str(svg), "--out-metrics", str(metrics),
    )
    assert curves.read_text().startswith("series,x,y")
    assert svg.read_text().startswith("<svg")
    assert metrics.read_text().startswith("method,")


def test_invalid_geometry_exits_nonzero():
    proc = run_cli("recover", "--n", "10", "--dim", "30", "--trials", "1", expect_ok=False)
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_unknown_subcommand_fails():
    proc = subprocess.run([*CLI, "frobnicate"], capture_output=True, text=True)
    assert proc.returncode != 0
