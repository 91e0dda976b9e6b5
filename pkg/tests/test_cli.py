import json
import subprocess
import sys

import pytest

from cqbag.cli import main
from conftest import D_TEXT, PSI_TEXT


@pytest.fixture
def files(tmp_path):
    (tmp_path / "psi.ucq").write_text(PSI_TEXT)
    (tmp_path / "d.st").write_text(D_TEXT)
    (tmp_path / "s.poly").write_text("x1*x1 + x2")
    (tmp_path / "b.poly").write_text("x1 + x2*x2")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_eval(files, capsys):
    assert run(capsys, "eval", "--query", files / "psi.ucq", "--structure", files / "d.st") == (0, "count: 6\n")
    code, out = run(capsys, "--format", "tsv", "eval", "--naive", "--query", files / "psi.ucq",
                    "--structure", files / "d.st")
    assert code == 0 and out == "count\t6\n"


def test_contain_exit_codes(files, capsys):
    args = ["contain", "--qs", files / "psi.ucq", "--qb", files / "psi.ucq", "--structure", files / "d.st"]
    code, out = run(capsys, *args)
    assert code == 0 and "HOLDS" in out
    code, out = run(capsys, *args, "--r", "3/2")
    assert code == 1 and "VIOLATED" in out and "lhs: 6" in out


def test_transform_pipeline(files, capsys):
    code, out = run(capsys, "cqize", "--query", files / "psi.ucq")
    (files / "cq.ucq").write_text(out)
    code, out = run(capsys, "marsify", "--structure", files / "d.st")
    (files / "m.st").write_text(out)
    assert run(capsys, "eval", "--query", files / "cq.ucq", "--structure", files / "m.st") == (0, "count: 7\n")
    code, out = run(capsys, "trips", "--arity", "3", "--structure", files / "m.st")
    assert code == 0 and out.strip().endswith("trips: 4")
    code, out = run(capsys, "trips", "--arity", "3", "--structure", files / "m.st", "--query", files / "psi.ucq")
    assert sorted(line.rsplit("\t", 1)[1] for line in out.splitlines()[:-1]) == ["1", "2", "2", "2"]


def test_relativize_and_poly2ucq(files, capsys):
    (files / "m.cq").write_text("X2(_)")
    code, out = run(capsys, "relativize", "--at", "@mars", "--query", files / "m.cq")
    assert code == 0 and "V(@mars,_w1)" in out
    code, out = run(capsys, "poly2ucq", "--poly", files / "s.poly")
    assert out.count("|") == 1


def test_reduce_writes_manifest(files, capsys):
    out_dir = files / "out"
    code, _ = run(capsys, "reduce", "thm3", "--eps", "1", "--in", files / "s.poly", files / "b.poly", "--out", out_dir)
    assert code == 0
    man = json.loads((out_dir / "manifest.txt").read_text())
    assert (man["theorem"], man["c"], man["cent"], man["u"]) == ("thm3", "2", "3/2", "3")
    assert (out_dir / "qs.ucq").exists() and (out_dir / "qb.ucq").exists()
    code, out = run(capsys, "reduce", "thm2", "--in", files / "s.poly", files / "b.poly")
    assert code == 0 and "non-trivial-only" in out
    code, _ = run(capsys, "reduce", "thm2", "--in", files / "s.poly")
    assert code == 2


def test_reduce_pleasantize_and_cor5(files, capsys):
    (files / "q.ucq").write_text("A(@a) & B(y)")
    code, out = run(capsys, "reduce", "pleasantize", "--in", files / "q.ucq")
    assert code == 0 and "A'(" in out
    (files / "bs.cq").write_text("E(y,z)")
    (files / "bb.cq").write_text("E(y,y)")
    code, out = run(capsys, "reduce", "cor5", "--in", files / "bs.cq", files / "bb.cq")
    assert code == 0 and "!=" in out


def test_check_lemma(capsys):
    code, out = run(capsys, "check-lemma", "--name", "lem10", "--samples", "10", "--seed", "4")
    assert code == 0 and out.startswith("cfg: ") and "PASS lem10" in out
    assert run(capsys, "check-lemma", "--name", "nope")[0] == 2


def test_search(files, capsys):
    (files / "two.ucq").write_text("A(u) | B(v)")
    (files / "one.ucq").write_text("A(u) & B(v)")
    code, out = run(capsys, "search", "--qs", files / "two.ucq", "--qb", files / "one.ucq", "--max-size", "1")
    assert code == 1 and "COUNTEREXAMPLE" in out
    code, out = run(capsys, "search", "--qs", files / "one.ucq", "--qb", files / "one.ucq", "--max-size", "2")
    assert code == 0 and "NONE FOUND" in out
    code, _ = run(capsys, "search", "--qs", files / "one.ucq", "--qb", files / "one.ucq", "--max-size", "6",
                  "--sig", "E/2", "--cap", "100")
    assert code == 3


def test_usage_errors(files, capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "eval", "--query", files / "missing", "--structure", files / "d.st")[0] == 2
    (files / "bad.ucq").write_text("E(x,")
    assert run(capsys, "eval", "--query", files / "bad.ucq", "--structure", files / "d.st")[0] == 2


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "cqbag", "eval", "--query", str(files / "psi.ucq"),
                          "--structure", str(files / "d.st")], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "count: 6"
