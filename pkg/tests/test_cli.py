import json
import math
import os
import subprocess
import sys

import pytest

from knotvol.cli import main
from knotvol.jones import jones_whitehead
from knotvol.qnum import RootOfUnityCtx


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jones_text_output(capsys):
    code, out, _ = run_cli(["jones", "--knot", "borromean", "--N", "3"], capsys)
    assert code == 0
    assert "re     = 90" in out


def test_jones_matches_library_bit_exact(capsys):
    code, out, _ = run_cli(["jones", "--knot", "whitehead", "--p", "2",
                            "--N", "5", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    jv = jones_whitehead(RootOfUnityCtx(5), 2)
    assert payload["logmag"] == jv.value.logmag
    assert payload["phase"] == jv.value.phase


def test_jones_threads_deterministic(capsys):
    code1, out1, _ = run_cli(["jones", "--knot", "double", "--p", "6",
                              "--r", "2", "--N", "21", "--format", "json"], capsys)
    code8, out8, _ = run_cli(["jones", "--knot", "double", "--p", "6",
                              "--r", "2", "--N", "21", "--threads", "8",
                              "--format", "json"], capsys)
    assert code1 == code8 == 0
    assert json.loads(out1)["logmag"] == json.loads(out8)["logmag"]


def test_usage_errors(capsys):
    code, _, _ = run_cli(["jones", "--knot", "whitehead", "--N", "5"], capsys)
    assert code == 2
    code, _, _ = run_cli(["jones", "--knot", "borromean", "--N", "4"], capsys)
    assert code == 2


def test_saddle_prints_alpha(capsys):
    code, out, _ = run_cli(["saddle", "--knot", "whitehead", "--p", "2"], capsys)
    assert code == 0
    assert "0.856035" in out and "-0.168907" in out


def test_volume_double(capsys):
    code, out, _ = run_cli(["volume", "--knot", "double", "--p", "6",
                            "--r", "2", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["vol"] - 3.42720524627) < 1e-8
    assert payload["path"] == "saddle_potential"


def test_verify_pass_and_fail_codes(capsys):
    code, out, _ = run_cli(["verify", "--knot", "borromean",
                            "--Ns", "51,101", "--tol", "0.2"], capsys)
    assert code == 0 and "PASS" in out
    code, out, _ = run_cli(["verify", "--knot", "borromean",
                            "--Ns", "21,31", "--tol", "0.01"], capsys)
    assert code == 4 and "FAIL" in out


def test_contour_csv_and_plot(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    png = tmp_path / "grid.png"
    code, _, _ = run_cli(["contour", "--knot", "whitehead", "--p", "2",
                          "--nx", "25", "--ny", "15",
                          "--out", str(out), "--plot", str(png)], capsys)
    assert code == 0
    header = out.read_text().splitlines()[0]
    assert header == "re_alpha,im_alpha,re_beta,im_beta,re_f,im_f,flag"
    assert len(out.read_text().splitlines()) == 1 + 25 * 15
    assert png.exists() and png.stat().st_size > 1000


def test_rep_json(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code, _, _ = run_cli(["rep", "--knot", "double", "--p", "6", "--r", "2",
                          "--out", str(out)], capsys)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["format"] == "knotvol-domain/1"
    assert max(doc["relation_residuals"].values()) < 1e-8


def test_regioncheck(capsys):
    code, out, _ = run_cli(["regioncheck", "--p", "6", "--r", "2",
                            "--region", "Edoubleprime", "--format", "json"],
                           capsys)
    assert code == 0
    payload = json.loads(out)
    assert len(payload["critical_points"]) == 1
    assert payload["min_grad_on_boundary"] > 0


def test_config_file_round_trip(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("knot = borromean\nN = 5\nformat = json\n")
    code, out, _ = run_cli(["--config", str(cfg), "jones"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["N"] == 5
    # explicit flag wins over the config value
    code, out2, _ = run_cli(["--config", str(cfg), "jones", "--N", "7"], capsys)
    assert json.loads(out2)["N"] == 7


def test_numeric_error_exit_code(capsys):
    # the (1, 1) pair is a torus knot: the saddle solver finds no
    # completeness-passing root and reports a numeric failure
    code, _, err = run_cli(["saddle", "--knot", "double", "--p", "1",
                            "--r", "1"], capsys)
    assert code == 3


def test_entry_point_installed():
    proc = subprocess.run([sys.executable, "-m", "knotvol.cli", "jones",
                           "--knot", "borromean", "--N", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "90" in proc.stdout
