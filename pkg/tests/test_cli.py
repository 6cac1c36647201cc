import json
import subprocess
import sys

import pytest

from wonderful_gkm import cli, rootsystem
from wonderful_gkm.symspace import Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "wgkm/1" and doc["command"] == argv[0]
    assert_no_floats(doc)
    return doc


def assert_no_floats(doc):
    if isinstance(doc, float):
        raise AssertionError(f"float {doc} in output")
    if isinstance(doc, dict):
        for v in doc.values():
            assert_no_floats(v)
    if isinstance(doc, list):
        for v in doc:
            assert_no_floats(v)


def test_euler(capsys):
    doc = run_json(capsys, "euler", "group:A1")
    assert doc["vertices"] == 4 and doc["euler"] == 4


@pytest.mark.parametrize("expr, value", [("c1(T)^3", "64"), ("c1(S)^3", "8"), ("td(S)", "1/6"), ("L(2)", "1")])
def test_integrate(capsys, expr, value):
    assert run_json(capsys, "integrate", "group:A1", "--expr", expr)["value"] == value


def test_describe_ef6(capsys):
    doc = run_json(capsys, "describe", "EF6")
    assert doc["types"]["Phi_K"] == "F4" and doc["types"]["Phi_L"] == "D4"
    assert doc["orders"]["W_G/K"] == 6 and doc["vertices"]["X"] == 270


def test_betti(capsys):
    assert run_json(capsys, "betti", "group:A1")["betti"] == [1, 1, 1, 1]
    assert run_json(capsys, "betti", "group:A2", "--variety", "Y")["betti"] == [1, 4, 1]


def test_gkm(capsys):
    doc = run_json(capsys, "gkm", "group:A1", "--variety", "Y")
    assert len(doc["vertices"]) == 2 and len(doc["edges"]) == 1
    assert doc["dim"] == 1


def test_chern_and_todd(capsys):
    doc = run_json(capsys, "chern", "group:A1", "--bundle", "S")
    assert doc["variety"] == "X" and [c["degree"] for c in doc["classes"]] == [0, 1, 2, 3]
    doc = run_json(capsys, "chern", "AC:2", "--mode", "formula")
    assert doc["variety"] == "Y" and doc["max_degree"] == 1
    doc = run_json(capsys, "todd", "group:A1", "--max-degree", "1")
    assert doc["values"]["e"] == "a1 + a2 + 1"


def test_verify_and_dims(capsys):
    doc = run_json(capsys, "verify", "group:A1")
    assert doc["ok"] is True
    doc = run_json(capsys, "dims", "group:A1", "--max-degree", "2")
    assert doc["equal"] and [r["X"] for r in doc["rows"]] == [1, 1, 3]


def test_failed_verification_exits_3(capsys, monkeypatch):
    def failing(space, level):
        rep = Report("stub")
        rep.add("always fails", False)
        return rep
    monkeypatch.setattr(cli, "verify_suite", failing)
    code, out, _ = run(capsys, "verify", "group:A1")
    assert code == 3 and json.loads(out)["ok"] is False


@pytest.mark.parametrize("argv, needle", [
    (["euler", "AC:1"], "^"),
    (["integrate", "group:A1", "--expr", "c1(T)**3"], "position"),
    (["integrate", "group:A1", "--expr", "c1(T)^2"], "degree 2 but dim X = 3"),
    (["integrate", "group:A1", "--expr", "X2*c1(T)^2"], "boundary index"),
    (["chern", "EF6"], "--max-degree"),
    (["chern", "group:A1", "--max-degree", "-1"], "non-negative"),
    (["dims", "group:A1", "--max-degree", "-2"], "non-negative"),
    (["frobnicate"], "invalid choice"),
    (["euler"], "required"),
    (["cache", "--clear", "EF6"], "only accepted with --rebuild"),
    (["cache"], "required"),
])
def test_usage_errors_exit_1(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    assert needle in err


def test_computation_errors_exit_2(capsys):
    code, out, err = run(capsys, "euler", "group:E8")
    assert code == 2 and "exceeds the enumeration cap" in err


def test_output_is_byte_identical_across_runs(capsys):
    for argv in (["describe", "AC:3"], ["gkm", "DB:3"], ["chern", "group:A2", "--mode", "formula"]):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first


def test_subprocess_determinism_and_exit_codes():
    cmd = [sys.executable, "-m", "wonderful_gkm", "integrate", "group:A1", "--expr", "c1(T)^3"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert json.loads(a.stdout)["value"] == "64"
    bad = subprocess.run([sys.executable, "-m", "wonderful_gkm", "euler", "AC:1"], capture_output=True)
    assert bad.returncode == 1


def test_verbose_logs_timing(capsys):
    code, out, err = run(capsys, "-v", "euler", "group:A1")
    assert code == 0 and "finished in" in err


def test_cache_rebuild_and_clear(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("WONDERFUL_CACHE_DIR", str(tmp_path))
    monkeypatch.setattr(rootsystem, "CACHE_MIN_ORDER", 10)
    doc = run_json(capsys, "cache", "--rebuild", "group:A2", "DB:4")
    assert [e["order"] for e in doc["rebuilt"]] == [36, 192]
    assert all((tmp_path / e["file"]).exists() for e in doc["rebuilt"])
    doc = run_json(capsys, "cache", "--clear")
    assert len(doc["removed"]) == 2 and not list(tmp_path.glob("weyl-*"))
