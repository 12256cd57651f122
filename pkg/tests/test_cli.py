import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from shiftfact.cli import format_scalar, main, parse_scalar


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "shiftfact.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_parse_scalar():
    assert parse_scalar("3") == 3 and isinstance(parse_scalar("3"), int)
    assert parse_scalar("-2.5") == -2.5
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("1+2i") == 1 + 2j
    assert parse_scalar("-1.5-0.5i") == -1.5 - 0.5j
    assert parse_scalar("2i") == 2j
    with pytest.raises(Exception):
        parse_scalar("zebra")


def test_format_scalar():
    assert format_scalar(24.0 + 0j) == "24"
    assert format_scalar(0.5) == "0.5"
    assert format_scalar(Fraction(1, 2)) == "0.5"
    assert format_scalar(Fraction(1, 2), exact=True) == "1/2"
    assert format_scalar(1 + 2j) == "1+2i"
    assert format_scalar(-1.5 - 0.5j) == "-1.5-0.5i"


def test_eval_documented_examples(capsys):
    assert main(["eval", "--z", "1", "--s", "1", "--n", "4"]) == 0
    assert capsys.readouterr().out.strip() == "24"
    assert main(["eval", "--z", "3", "--s", "1", "--n", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["eval", "--z", "3", "--s", "1", "--q", "-1"]) == 0
    assert capsys.readouterr().out.strip() == "0.5"


def test_eval_exact_and_errors(capsys):
    assert main(["eval", "--z", "3", "--s", "1", "--q", "-1", "--exact"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"
    # pole: exit 1 with the condition named
    assert main(["eval", "--z", "2", "--s", "1", "--q", "-3"]) == 1
    # parse failure: exit 2
    assert main(["eval", "--z", "x", "--s", "1", "--n", "2"]) == 2
    # exactly one index required
    assert main(["eval", "--z", "1", "--s", "1"]) == 2
    capsys.readouterr()


def test_unknown_flag_exits_2():
    code, _, err = run_cli("eval", "--z", "1", "--s", "1", "--n", "2", "--bogus")
    assert code == 2
    assert "usage" in err.lower()


def test_det_documented_examples(capsys):
    assert main(["det", "--kind", "SShifted", "--s", "2.5", "--nodes", "0,1,2"]) == 0
    out = capsys.readouterr().out
    assert "closed_form: 2" in out
    assert main(["det", "--kind", "GammaShift", "--nodes", "1,2,3"]) == 0
    out = capsys.readouterr().out
    assert "closed_form: 4" in out and "oracle: 4" in out


def test_det_spec_file_and_bad_json(tmp_path, capsys):
    doc = {
        "schema": 1,
        "kind": "TwoSetSymmetric",
        "s": [0.3, 0.4],
        "params": {"w": [0, 1]},
        "nodes": [0, 1],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(doc))
    assert main(["det", "--spec", str(path), "--format", "json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["closed_form"] == -1
    bad = tmp_path / "bad.json"
    bad.write_text("this is not json")
    assert main(["det", "--spec", str(bad)]) == 2
    capsys.readouterr()


def test_det_threshold_exit(capsys):
    code = main(
        ["det", "--kind", "GammaShift", "--nodes", "1.0,2.0,3.0", "--threshold", "1e-18"]
    )
    capsys.readouterr()
    assert code == 1


def test_det_single_route_flags(capsys):
    assert main(["det", "--kind", "SShifted", "--nodes", "0,1,2", "--oracle-only"]) == 0
    out = capsys.readouterr().out
    assert "oracle: 2" in out and "closed_form" not in out
    assert main(["det", "--kind", "SShifted", "--nodes", "0,1,2", "--closed-only"]) == 0
    out = capsys.readouterr().out
    assert "closed_form: 2" in out and "oracle" not in out
    assert main(["det", "--kind", "SShifted", "--nodes", "0,1,2",
                 "--oracle-only", "--closed-only"]) == 2
    capsys.readouterr()


def test_sum_command(capsys):
    assert main(["sum", "--a", "1", "--r", "1", "--s", "1", "--p", "2", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "20"
    assert (
        main(["sum", "--a", "1", "--r", "1", "--s", "1", "--p", "2", "--n", "3",
              "--method", "closed"]) == 0
    )
    assert capsys.readouterr().out.strip() == "20"
    assert (
        main(["sum", "--a", "1/2", "--r", "1/3", "--s", "-2", "--p", "3", "--n", "4",
              "--method", "recurrence", "--exact"]) == 0
    )
    value = capsys.readouterr().out.strip()
    from shiftfact.apsum import APSumArgs, ap_sum_direct

    want = ap_sum_direct(APSumArgs(Fraction(1, 2), Fraction(1, 3), Fraction(-2), 3, 4))
    assert Fraction(value) == want
    # closed form demands r = +/- s
    assert main(["sum", "--a", "1", "--r", "2", "--s", "1", "--p", "1", "--n", "3",
                 "--method", "closed"]) == 2
    capsys.readouterr()


def test_rmt_moment_and_mellin(capsys):
    assert main(["rmt", "--ensemble", "hermite", "--n", "2", "--q", "0"]) == 0
    out = capsys.readouterr().out
    assert "value=1.0" in out
    assert main(
        ["rmt", "--ensemble", "laguerre", "--alpha", "0.5", "--n", "3", "--s", "2.5",
         "--oracle", "--format", "json"]
    ) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["residual"] < 1e-8
    assert main(["rmt", "--ensemble", "hermite", "--n", "2", "--q-max", "3",
                 "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("ensemble,")
    assert len(lines) == 5
    # missing the Mellin variable / moment order entirely
    assert main(["rmt", "--ensemble", "hermite", "--n", "2"]) == 2
    capsys.readouterr()


def test_selftest_deterministic_bytes():
    args = ["selftest", "--suite", "apsum", "--trials", "25", "--seed", "11"]
    code1, out1, _ = run_cli(*args)
    code2, out2, _ = run_cli(*args)
    assert code1 == code2 == 0
    assert out1 == out2 and out1.strip()


def test_selftest_json_and_env_seed(tmp_path):
    out = tmp_path / "report.json"
    code, _, _ = run_cli(
        "selftest", "--suite", "sfact", "--trials", "5", "--seed", "3",
        "--format", "json", "--out", str(out)
    )
    assert code == 0
    docs = json.loads(out.read_text())
    assert docs[0]["suite"] == "sfact" and docs[0]["passed"] is True
    env = dict(os.environ, SHIFTFACT_SEED="42")
    proc = subprocess.run(
        [sys.executable, "-m", "shiftfact.cli", "selftest", "--suite", "apsum",
         "--trials", "5", "--format", "json"],
        capture_output=True, text=True, env=env,
    )
    assert json.loads(proc.stdout)[0]["seed"] == 42
