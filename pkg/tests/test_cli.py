from __future__ import annotations

import json

import pytest

from medcube.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_median(capsys):
    code, r = report(capsys, "median", "--graph", "p3", "a", "b", "a b")
    assert code == 0 and r["schema"] == "1" and r["command"] == "median"
    assert r["median"] in ("a", "b", "a b")


def test_median_arity(capsys):
    code, r = report(capsys, "median", "--graph", "p3", "a", "b")
    assert code == 2 and r["kind"] == "validation"


def test_interval_and_hull(capsys):
    code, r = report(capsys, "interval", "--graph", "z2", "1", "a b")
    assert code == 0 and r["size"] == 4
    code, r = report(capsys, "hull", "--graph", "f2", "a", "b")
    assert code == 0 and r["size"] == 3


def test_good_partition(capsys):
    code, r = report(capsys, "good-partition", "--graph", "p4")
    assert code == 0 and r["certified"] is True


def test_good_partition_reducible(capsys):
    code, r = report(capsys, "good-partition", "--graph", "z2")
    assert code == 2 and "error" in r


def test_malformed_graph(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a", "a"], "edges": []}')
    code, r = report(capsys, "median", "--graph", str(bad), "1", "1", "1")
    assert code == 2 and r["kind"] == "validation"
    bad.write_text("not json")
    code, r = report(capsys, "median", "--graph", str(bad), "1", "1", "1")
    assert code == 2


def test_missing_graph(capsys):
    code, r = report(capsys, "median", "--graph", "nope", "1", "1", "1")
    assert code == 2 and "not found" in r["error"]


def test_cap_exceeded(capsys):
    code, r = report(capsys, "interval", "--graph", "z3", "--cap", "3", "1", "a b c")
    assert code == 3 and r["kind"] == "cap"


def test_bad_word(capsys):
    code, r = report(capsys, "median", "--graph", "p3", "q", "1", "1")
    assert code == 2


def test_empty_corpus(tmp_path, capsys):
    code, r = report(capsys, "acceptance", "--corpus", str(tmp_path), "--only", "13")
    assert code == 2 and "no graphs" in r["error"]


def test_rerun_is_byte_identical(capsys):
    argv = ("cmp-report", "--graph", "p3", "--aut", "pc(a,{c})", "--radius", "3")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "mu-set", "--graph", "p4", "--aut", "join(a,c)", "--radius", "2", "--out", str(path))
    assert code == 0 and out == ""
    r = json.loads(path.read_text())
    assert r["command"] == "mu-set" and r["truncated"] is False


def test_budget_truncates(capsys):
    code, r = report(capsys, "mu-set", "--graph", "c5", "--aut", "pc(a,{c,d})", "--radius", "6", "--budget-ms", "1")
    assert code == 0 and r["truncated"] is True


def test_bad_automorphism(capsys):
    code, r = report(capsys, "mu-set", "--graph", "p4", "--aut", "join(a,b)")
    assert code == 2


def test_fix_explore(capsys):
    code, r = report(capsys, "fix-explore", "--graph", "p3", "--aut", "inv(a)", "--radius", "2")
    assert code == 0 and "fix" in r


def test_staircase_grid(capsys):
    code, r = report(capsys, "staircase", "--grid", "3")
    assert code == 0 and r["length"] == 3


def test_algebra_commands(tmp_path, capsys):
    alg = tmp_path / "sq.json"
    alg.write_text(json.dumps({"width": 2, "points": ["00", "01", "10", "11"]}))
    code, r = report(capsys, "closure", "--algebra", str(alg), "00", "11")
    assert code == 0 and r["size"] == 2
    assert r["bound"] == {"rank": 2, "h": 12, "stated": 244}
    code, r = report(capsys, "bridge", "--algebra", str(alg), "--set", "00", "--set", "11")
    # the bridge of two points is their interval
    assert code == 0 and r["bridge"] == ["00", "01", "10", "11"]
    code, r = report(capsys, "staircase", "--algebra", str(alg))
    assert code == 0 and r["length"] == 1
    code, r = report(capsys, "closure", "--algebra", str(alg), "02")
    assert code == 2


def test_acceptance_only(capsys):
    code, out, err = run(capsys, "acceptance", "--only", "13")
    r = json.loads(out)
    assert code == 0 and r["all_passed"] and [c["criterion"] for c in r["criteria"]] == [13]
    assert "[PASS] criterion 13" in err


def test_module_entry_point():
    import subprocess
    import sys
    p = subprocess.run([sys.executable, "-m", "medcube", "median", "--graph", "f2", "a", "b", "1"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["median"] == "1"
