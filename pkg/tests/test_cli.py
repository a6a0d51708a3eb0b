from __future__ import annotations

import json

import pytest

from koszul.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, main

NON_KOSZUL = """\
algebra NK over Q
vertices v
arrow x : v -> v
arrow y : v -> v
relation x*x
relation x*y + y*y
"""

CUBIC = """\
algebra CUB over Q
vertices v
arrow x : v -> v
arrow y : v -> v
relation x*x
relation x*y*x
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {"nk": NON_KOSZUL, "cubic": CUBIC}.items():
        p = tmp_path / f"{name}.alg"
        p.write_text(text)
        out[name] = str(p)
    simple = tmp_path / "simple.json"
    simple.write_text(json.dumps({"algebra": "EXT1", "standard": "simple", "vertex": "v"}))
    out["simple"] = str(simple)
    explicit = tmp_path / "explicit.json"
    explicit.write_text(json.dumps({"algebra": "EXT1", "dims": [["v", 0, 1], ["v", 1, 1]],
                                    "action": {"a": [[0, [["1"]]]]}}))
    out["explicit"] = str(explicit)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"algebra": "EXT1", "dims": [["w", 0, 1]]}))
    out["bad"] = str(bad)
    broken = tmp_path / "broken.alg"
    broken.write_text("algebra B over Q\nvertices v\narrow a : v -> w\n")
    out["broken"] = str(broken)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_list_and_emit(capsys):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == EXIT_OK and "EXT2" in out.split()
    code, out, _ = run(capsys, "corpus", "emit", "EXT1")
    assert code == EXIT_OK and "relation a*a" in out


def test_dual_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "dual", "EXT2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["relations"] == ["a*b - b*a"]
    code, out, _ = run(capsys, "--format", "json", "dual", "RSZ_A3")
    assert json.loads(out)["relations"] == []


def test_parse_with_field_override(capsys):
    code, out, _ = run(capsys, "--field", "GF5", "--format", "json", "parse", "EXT2")
    assert code == EXIT_OK and json.loads(out)["field"] == "GF 5"


def test_koszul_check(capsys, files):
    code, out, _ = run(capsys, "koszul-check", "EXT1", "--horizon", "4")
    assert code == EXIT_OK and "KoszulUpTo(4)" in out
    code, out, _ = run(capsys, "koszul-check", files["nk"], "--horizon", "4")
    assert code == EXIT_FAIL and "FailsAt" in out
    code, out, _ = run(capsys, "koszul-check", files["cubic"])
    assert code == EXIT_FAIL and "NotQuadraticIdeal" in out


def test_resolve_and_kfunctor(capsys, files):
    code, out, _ = run(capsys, "--format", "json", "resolve", "EXT1", "--module", files["simple"],
                       "--horizon", "3")
    data = json.loads(out)
    assert code == EXIT_OK and data["linear"] and not data["complete"]
    assert [t[0] for t in data["terms"]] == [-3, -2, -1, 0]
    code, out, _ = run(capsys, "resolve", "EXT1", "--module", files["explicit"])
    assert code == EXIT_OK and "complete=True" in out
    code, out, _ = run(capsys, "--format", "json", "kfunctor", "EXT1", "--module", files["simple"])
    data = json.loads(out)
    assert code == EXIT_OK and data["terms"] == [[0, [["v", 0, 1]]]]


def test_ext_table(capsys):
    code, out, _ = run(capsys, "--format", "json", "ext-table", "BEIL_1", "--horizon", "2")
    data = json.loads(out)
    assert code == EXIT_OK
    assert [1, "0", "1", 1, 2] in data["entries"]


def test_verify_exit_codes(capsys, files):
    code, out, _ = run(capsys, "verify", "involution", "EXT2")
    assert code == EXIT_OK and "Pass" in out
    code, out, _ = run(capsys, "--format", "json", "verify", "k-homotopy", "KA3", "--samples", "3", "--seed", "4")
    data = json.loads(out)
    assert code == EXIT_OK and data["seed"] == 4 and data["reports"][0]["verdict"] == "Pass"
    code, out, _ = run(capsys, "verify", "generator-homs", files["nk"], "--horizon", "4")
    assert code == EXIT_INCONCLUSIVE and "Inconclusive" in out


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "EXT2", "--n", "4")
    assert code == EXIT_OK and "Pass" in out
    code, out, _ = run(capsys, "--format", "json", "hilbert", "RSZ_A3", "--n", "3")
    assert code == EXIT_OK and "series" in json.loads(out)


def test_usage_errors(capsys, files):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "parse", "no/such/file")[0] == EXIT_USAGE
    assert run(capsys, "koszul-check", "EXT1", "--horizon", "0")[0] == EXIT_USAGE
    assert run(capsys, "corpus", "emit")[0] == EXIT_USAGE
    code, _, err = run(capsys, "parse", files["broken"])
    assert code == EXIT_USAGE and "parse error" in err
    code, _, err = run(capsys, "resolve", "EXT1", "--module", files["bad"])
    assert code == EXIT_USAGE and "unknown vertex" in err
    assert run(capsys, "dual", files["cubic"])[0] == EXIT_USAGE
