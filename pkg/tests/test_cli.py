import io
import json
import subprocess
import sys

import pytest

from steinberg.cli import UsageError, dispatch, parse_root, parse_sigma, parse_word
from steinberg.rootsys import Root, build_root_system
from steinberg.structconst import build_table


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_root_forms():
    phi = build_root_system("F4")
    assert parse_root("[1,-1,0,0]", phi) == Root((1, -1, 0, 0))
    assert parse_root("e1-e2", phi) == Root((1, -1, 0, 0))
    assert parse_root("1/2e1+1/2e2+1/2e3+1/2e4", phi) == Root(("1/2",) * 4)
    for bad in ("[1,1,1,1]", "e9", "1,0", "[1,0,0"):
        with pytest.raises(UsageError):
            parse_root(bad, phi)


def test_parse_sigma_modes():
    phi = build_root_system("A3")
    assert len(parse_sigma("e1-e2,e2-e3:pos", phi).members) == 3
    assert len(parse_sigma("e1-e2,e2-e3:strict", phi).members) == 1
    assert len(parse_sigma("e1-e2>0,e2-e3", phi).members) == 2
    with pytest.raises(UsageError):
        parse_sigma("e1-e2:loose", phi)


def test_parse_word_with_invertible():
    phi = build_root_system("A3")
    letters, ring = parse_word("x[1,-1,0,0](t^-1*b) x[e2-e3](c)", phi, invertible="t")
    assert ring.names == ("b", "c", "t")
    assert len(letters) == 2
    with pytest.raises(UsageError):
        parse_word("x[1,-1,0,0](t^-1)", phi)
    with pytest.raises(UsageError):
        parse_word("y[1,-1,0,0](b)", phi)


def test_collect_prints_signed_constant():
    n = build_table("A3").N(Root((1, -1, 0, 0)), Root((0, 1, -1, 0)))
    code, out, _ = run("collect", "A3", "--sigma", "e1-e2,e2-e3:pos",
                       "x[1,-1,0,0](b) x[0,1,-1,0](c) x[1,-1,0,0](-b) x[0,1,-1,0](-c)")
    assert code == 0
    assert out.strip() == ("x[1,0,-1,0](b*c)" if n == 1 else "x[1,0,-1,0](-b*c)")
    code, out, _ = run("collect", "A3", "--json", "--strategy", "lowest", "--sigma", "e1-e2,e2-e3:pos",
                       "x[1,-1,0,0](b) x[1,-1,0,0](-b)")
    assert code == 0 and json.loads(out)["normal_form"] == []


def test_roots_and_constants():
    code, out, _ = run("roots", "F4")
    assert code == 0 and out.startswith("F4: 48 roots")
    code, out, _ = run("roots", "B2", "--json")
    assert len(json.loads(out)["roots"]) == 8
    code, out, _ = run("constants", "B2")
    assert code == 0 and "N21" in out


def test_schur_command():
    assert run("schur", "F4", "Z/2")[1].strip() == "Z/2"
    assert run("schur", "A3", "Z/3")[1].strip() == "0"
    assert run("schur", "B3", "Z/6")[1].strip() == "Z/6"
    code, out, _ = run("schur", "D4", "Z/2", "--json")
    assert json.loads(out)["invariant_factors"] == [2, 2]


def test_homotope_demo():
    code, out, _ = run("homotope", "demo", "--ring", "Z/6", "--stage", "2")
    assert code == 0
    assert "section check" in out and "pass" in out


@pytest.mark.parametrize("argv", [
    ("roots", "G2"), ("schur", "F4", "Q"), ("collect", "A3", "--sigma", "e1-e2,e2-e1", "x[1,-1,0,0](b)"),
    ("homotope", "demo", "--ring", "R"), ("nonsense",), (),
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_verify_writes_report(tmp_path, monkeypatch):
    monkeypatch.setenv("STEINBERG_OUTPUT_DIR", str(tmp_path))
    code, out, _ = run("verify-paper", "--system", "A3", "--no-schur", "--out", "report.json")
    assert code == 0
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["summary"]["fail"] == 0
    assert report["system"] == ["A3"]


def test_verify_mutation_exits_1():
    code, out, _ = run("verify-paper", "--system", "A3", "--no-schur", "--mutate")
    assert code == 1
    assert "fail" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "steinberg", "schur", "C3", "Z/4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "Z/2"
