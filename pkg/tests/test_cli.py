import io
import subprocess
import sys

import pytest

from dsgraphoid.bpa import parse_bpa
from dsgraphoid.cli import run_command
from dsgraphoid.examples import fixture_text


def ds(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


@pytest.mark.parametrize("argv, code", [
    (("indep", "fixture:ex-square", "--type", "unconditional", "-q", "X", "-r", "Y"), 3),
    (("indep", "fixture:ex-xor", "--type", "unconditional", "-q", "X", "-r", "Y"), 0),
    (("indep", "fixture:ex-xor", "--type", "shenoy", "-q", "X", "-r", "Y", "-p", "Z"), 3),
    (("indep", "fixture:ex-chain", "--type", "intrinsic", "-q", "X", "-r", "Y", "-p", "Z"), 3),
    (("anticond", "fixture:ex-diag", "--given", "Y,Z", "--verify", "fixture:ex-diag-cond"), 0),
    (("anticond", "fixture:ex-diag", "--given", "Y,Z", "--solve", "compress:Z"), 0),
    (("graphoid", "fixture:ex-chain", "--relation", "shenoy", "--axioms", "intersection"), 3),
    (("--solver-cap", "0", "anticond", "fixture:ex-chain", "--given", "Z", "--solve", "cano"), 4),
    (("universe-focal", "--size", "3", "--eps", "1/10"), 3),
    (("universe-focal", "--size", "3", "--eps", "0"), 0),
])
def test_verdict_exit_codes(argv, code):
    assert ds(*argv)[0] == code


def test_error_exit_codes(tmp_path):
    (tmp_path / "a.bpa").write_text("frame X = a b\nm { (a) } = 1\n")
    (tmp_path / "b.bpa").write_text("frame X = a b\nm { (b) } = 1\n")
    (tmp_path / "bad.bpa").write_text("frame X = a b\nm { (c) } = 1\n")
    a, b, bad = (str(tmp_path / n) for n in ("a.bpa", "b.bpa", "bad.bpa"))
    assert ds("combine", a, b)[0] == 67
    code, _, err = ds("show", bad)
    assert code == 65 and "line 2" in err
    assert ds("show", str(tmp_path / "missing.bpa"))[0] == 74
    assert ds("anticond", "fixture:ex-cano-1", "--given", "Q")[0] == 72
    assert ds("--lattice-gate", "2", "anticond", "fixture:ex-chain", "--given", "Z", "--solve", "cano")[0] == 66
    assert ds("indep", "fixture:ex-square", "-q", "X")[0] == 64
    assert ds("nonsense")[0] == 64
    assert ds("show", "fixture:no-such-fixture")[0] == 64


def test_kv_output_is_deterministic():
    argv = ("combine", "fixture:ex-cano-1", "fixture:ex-cano-2")
    first, second = ds(*argv), ds(*argv)
    assert first == second
    assert kv(first[1])["conflict"] == "9/25"


def test_gen_output_parses_back():
    code, out, _ = ds("gen", "--vars", "2,3", "--seed", "11", "--diverse")
    assert code == 0
    m = parse_bpa(out)
    assert m.frame.names == ("X1", "X2")
    assert ds("gen", "--vars", "2,3", "--seed", "11", "--diverse")[1] == out


def test_show_and_project(tmp_path):
    code, out, _ = ds("show", "fixture:ex-square")
    assert code == 0 and kv(out)["class.diverse"] == "true"
    code, out, _ = ds("--format", "table", "project", "fixture:ex-diag", "--onto", "Z")
    assert code == 0 and out.strip()


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(fixture_text("ex-square")))
    code, out, _ = ds("show", "-")
    assert code == 0 and "class.proper=true" in out


def test_examples_all_pass():
    code, out, _ = ds("examples", "--run", "all")
    assert code == 0
    lines = out.splitlines()
    assert lines and not [line for line in lines if line.startswith("fail=")]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dsgraphoid.cli", "examples", "--list"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "fixture=ex-chain" in proc.stdout
