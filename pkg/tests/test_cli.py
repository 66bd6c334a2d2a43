import json
import subprocess
import sys

import pytest

from conetract.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_curve_text(capsys):
    code, out, _ = run(capsys, "curve", "C_3")
    assert code == 0
    assert "degree 3, genus 1" in out


def test_curve_flagged_row_exits_2(capsys):
    code, out, _ = run(capsys, "curve", "C_6", "--format", "json")
    data = json.loads(out)
    assert code == 2
    assert data["schema_version"] == 1 and data["genus"] == 3 and data["discrepancies"]


def test_curve_literal_and_bad_input(capsys):
    assert run(capsys, "curve", "1:0,0,0,0,0,0")[0] == 0
    code, _, err = run(capsys, "curve", "0:0,0,0,0,0,0")
    assert code == 1 and "not a curve class" in err
    code, _, err = run(capsys, "curve", "C_42")
    assert code == 1 and "unknown curve" in err


def test_cone_json(capsys):
    code, out, _ = run(capsys, "cone", "C_{3,5}", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["beta"] == "5" and data["L"] == "-3H+5D+E"


def test_cone_swap_row(capsys):
    assert run(capsys, "cone", "C_9B")[0] == 2


def test_tables_csv(capsys, tmp_path):
    out_file = tmp_path / "t3.csv"
    code, out, _ = run(capsys, "tables", "--which", "3", "--format", "csv", "--out", str(out_file))
    assert code == 0 and out == ""
    lines = out_file.read_text().splitlines()
    assert lines[0].startswith("name,") and len(lines) == 24


def test_tables_discrepancies_exit_2(capsys):
    code, out, _ = run(capsys, "tables", "--discrepancies", "--format", "json")
    assert code == 2
    assert len(json.loads(out)["discrepancies"]) == 26


def test_csv_needs_single_table(capsys):
    assert run(capsys, "tables", "--format", "csv")[0] == 1


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0 and "FAIL" not in out


def test_analyze_rejects_bad_model(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "something else"}')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 1 and "schema error" in err
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1


def test_threads_from_env(monkeypatch):
    from argparse import Namespace

    from conetract.cli import _threads

    monkeypatch.setenv("CONETRACT_THREADS", "6")
    assert _threads(Namespace(threads=None)) == 6
    assert _threads(Namespace(threads=3)) == 3
    monkeypatch.setenv("CONETRACT_THREADS", "zero")
    assert _threads(Namespace(threads=None)) == 1


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "conetract.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("conetract ")


@pytest.mark.slow
def test_construct_then_analyze(capsys, tmp_path):
    model = tmp_path / "c3.json"
    code, _, err = run(capsys, "construct", "C_3", "--prime", "257", "--out", str(model))
    assert code == 0 and "F3_smooth: passes" in err
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", str(model), "--threads", "2", "--out", str(report))
    data = json.loads(report.read_text())
    assert code == 0 and "status: ok" in out
    assert (data["mu2"], data["delta"]) == (24, 1)
