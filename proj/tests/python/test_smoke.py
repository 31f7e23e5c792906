import os
from pathlib import Path

import pytest

import stringtop

FIXTURES = Path(os.environ.get("STRINGTOP_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def test_commands():
    names = stringtop.commands()
    assert "loop-betti" in names
    assert "ext-diagonal" in names


def test_loop_betti_s3():
    r = stringtop.run("loop-betti", FIXTURES / "s3.alg", max_degree=6)
    assert r.ok
    assert r.document["betti"] == [1, 0, 1, 1, 1, 1, 1]
    assert r.document["input"]["digest"].startswith("sha256:")


def test_diagonal_class():
    r = stringtop.run("diagonal-class", FIXTURES / "cp2.alg")
    assert r.document["tables"]["diagonal"] == "1⊗x2 + x⊗x + x2⊗1"


def test_verdict_and_usage_codes():
    assert stringtop.run("check-pd", FIXTURES / "cp2-bad.alg").exit_code == 1
    assert stringtop.run("loop-betti", FIXTURES / "s3-sullivan.alg").exit_code == 2


def test_ext_diagonal_bs1():
    r = stringtop.run("ext-diagonal", FIXTURES / "bs1.alg", max_degree=5, copies=2)
    assert r.ok
    assert r.document["verdicts"]["gorenstein_dimension"] == -1


def test_canonical_round_trip():
    text = (FIXTURES / "s2-sullivan.alg").read_text()
    once = stringtop.canonical(text)
    assert stringtop.canonical(once) == once


def test_parse_error():
    with pytest.raises(stringtop.ParseError):
        stringtop.canonical("kind = sullivan\n[generators]\nx = ?\n")


def test_sha256():
    assert stringtop.sha256_hex("abc").startswith("ba7816bf")
