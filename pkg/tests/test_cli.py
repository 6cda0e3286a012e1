import json

import pytest

from triposkit.cli import main


@pytest.fixture
def theory(tmp_path):
    def write(text, name="t.thy"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


BOOL = """locale B;
type A = set 2;
rel R : A = [1, 1];
judgment refl : x:A | R(x) |- x = x;
per X : A = eq;
"""

CHAIN = """locale chain3;
type A = set 2;
rel R : A = [h, 0];
judgment all : | |- forall x:A. R(x);
per S : A = [[h, 0], [0, 0]];
type Big = set 13;
per Huge : Big = eq;
"""


def test_check(theory, capsys):
    assert main(["check", theory(BOOL), "refl"]) == 0
    assert "holds" in capsys.readouterr().out
    assert main(["check", theory(CHAIN), "all"]) == 1
    out = capsys.readouterr().out
    assert "fails" in out and "countermodel" in out


def test_check_errors(theory, capsys):
    assert main(["check", theory("type = ;"), "x"]) == 2
    assert main(["check", theory(BOOL), "missing"]) == 2
    assert main(["check", "/nonexistent/file.thy", "x"]) == 2
    assert main([]) == 2


def test_reflect(theory, capsys):
    assert main(["reflect", theory(BOOL), "X"]) == 0
    assert "coarse: yes" in capsys.readouterr().out
    assert main(["reflect", theory(CHAIN), "S"]) == 0
    out = capsys.readouterr().out
    assert "reflection: 1 points" in out
    assert main(["reflect", theory(CHAIN), "Huge"]) == 3


def test_demos(capsys):
    assert main(["demo", "intro"]) == 0
    out = capsys.readouterr().out
    assert "[0, 3]" in out and "0 of 16" in out
    assert main(["demo", "unit-factorization"]) == 0
    assert "mono" in capsys.readouterr().out
    assert main(["demo", "eps-witness"]) == 0
    assert "inverse found: False" in capsys.readouterr().out
    assert main(["demo", "nope"]) == 2


def test_laws_guard_and_flags(capsys):
    assert main(["laws", "tripos", "--max-size", "99"]) == 2
    assert "SizeGuard" in capsys.readouterr().err
    assert main(["laws", "bogus"]) == 2
    assert main(["laws", "heyting", "--format", "xml"]) == 2


def test_laws_jsonl(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["laws", "heyting", "--seed", "3", "--format", "jsonl", "--out", str(out)]) == 0
    recs = [json.loads(line) for line in out.read_text().splitlines()]
    assert recs and all(r["passed"] and r["seed"] == 3 for r in recs)
    assert [r["check"] for r in recs] == sorted(r["check"] for r in recs)


def test_laws_biadj(capsys):
    assert main(["laws", "biadj", "--max-size", "1"]) == 0
    out = capsys.readouterr().out
    assert "triangle-1" in out and "triangle-2" in out
