from __future__ import annotations

import io
import json
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator

from diophant.cli import run
from diophant.formal import FormalSystem
from diophant.polynomial import Polynomial
from diophant.rings import GAUSS, ZZ, quad

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def schema(name):
    s = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    Draft202012Validator.check_schema(s)
    return Draft202012Validator(s)


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def cli_json(name, *argv, expect=0):
    code, out, err = cli("--format", "json", *argv)
    assert code == expect, err
    data = json.loads(out)
    errors = sorted(schema(name).iter_errors(data), key=str)
    assert not errors, errors[0]
    return data


def test_every_schema_is_valid():
    files = sorted(SCHEMAS.glob("*.schema.json"))
    assert len(files) >= 20
    for f in files:
        Draft202012Validator.check_schema(json.loads(f.read_text()))


def test_pell_table_output():
    code, out, _ = cli("nt", "pell", "--a", 2, "--n", 3)
    assert code == 0 and out.strip() == "(26,15)"


def test_enum_poly_zero():
    code, _, err = cli("enum", "poly", 0)
    assert code == 1 and "index must be ≥ 1" in err


def test_global_flags_on_either_side():
    a = cli("--format", "json", "nt", "alpha", "--n", 8, "--mod", 16)
    b = cli("nt", "alpha", "--n", 8, "--mod", 16, "--format", "json")
    assert a == b and json.loads(a[1])["value"] == 0


def test_nt_outputs_match_schemas():
    assert cli_json("nt_pell", "nt", "pell", "--a", 3, "--n", 4)["x"] == 577
    assert cli_json("nt_lemma5", "nt", "lemma5", "--a", 2, "--n", 2, "--k", 3)["holds"] is True
    assert cli_json("nt_pellfund", "nt", "pellfund", 5)["a"] == 9
    assert cli_json("nt_alpha", "nt", "alpha", "--n", 5)["value"] == 209


def test_foursquares_decomposition():
    data = cli_json("nt_foursquares", "nt", "foursquares", 310)
    assert data["n"] == 310 and sum(k * k for k in data["squares"]) == 310


def test_enum_outputs_match_schemas():
    cli_json("enum_poly", "enum", "poly", 6)
    cli_json("enum_set", "enum", "set", 2)
    rows = cli_json("diag_report", "enum", "diag", "--max", 10, "--budget", 10)
    assert [r["n"] for r in rows] == list(range(1, 11))
    code, a, _ = cli("--format", "json", "enum", "diag", "--max", 10, "--budget", 10)
    assert a == cli("--format", "json", "enum", "diag", "--max", 10, "--budget", 10)[1]


def test_reduce_gauss_and_verify(tmp_path):
    data = cli_json("reduce_gauss", "reduce", "gauss", "--a", 0)
    assert data["n"] == 9 and data["verified"] is True
    assert data["witness"]["x"] == [10864, 0]
    assert not list(schema("gauss_witness").iter_errors(data["witness"]))
    f = tmp_path / "w.json"
    f.write_text(json.dumps(data["witness"]))
    rep = cli_json("gauss_report", "reduce", "gauss-verify", f)
    assert rep["holds"] is True
    bad = dict(data["witness"], y=[40546, 0])
    f.write_text(json.dumps(bad))
    rep = cli_json("gauss_report", "reduce", "gauss-verify", f, expect=1)
    assert rep["failed"] == [5, 7]
    f.write_text("{not json")
    assert cli("reduce", "gauss-verify", f)[0] == 2


def test_reduce_quad(tmp_path):
    eq = tmp_path / "eq.txt"
    eq.write_text("x0 - 2\n")
    data = cli_json("reduce_quad", "reduce", "quad", "--d", 2, "--equation", eq, "--emit-witness", "2")
    assert data["arity"] == 45 and data["witness"]["verified"] is True
    data = cli_json("reduce_quad", "reduce", "quad", "--d", 2, "--equation", eq)
    assert "scan" in data
    assert cli("reduce", "quad", "--d", 2, "--equation", eq, "--emit-witness", "3")[0] == 1
    eq.write_text("x0 -")
    assert cli("reduce", "quad", "--d", 2, "--equation", eq)[0] == 2
    assert cli("reduce", "quad", "--d", 4, "--equation", eq)[0] in (1, 2)


def test_alpha_solutions():
    data = cli_json("alpha_solutions", "reduce", "alpha-solutions", "--bound", 5)
    assert data["all_real"] and data["in_families"] and data["families_covered"]
    assert [4, 0] in [s[0] for s in data["solutions"]]


def test_set_compile_and_search(tmp_path):
    formula = tmp_path / "evens.txt"
    formula.write_text("exists x1 (x0 = 2*x1)")
    S = cli_json("dioset", "set", "compile", "--formula", formula)
    setfile = tmp_path / "evens.json"
    setfile.write_text(json.dumps(S))
    res = cli_json("search_result", "search", "--set", setfile, "--radius", 10, "--witness-radius", 10)
    assert [m["point"][0][0] for m in res["members"]] == [0, 2, 4, 6, 8, 10]
    formula.write_text("x0 = 1 or x0 = 2")
    assert cli("set", "compile", "--formula", formula)[0] == 1
    formula.write_text("exists x1 (x0 = sqrtd*x1)")
    cli_json("dioset", "set", "compile", "--formula", formula, "--ring", "quad:2")


def test_formal_commands(tmp_path):
    rep = cli_json("formal_liar", "formal", "liar", "--size", 2)
    assert rep["counterexamples"] == 0
    assert cli("formal", "liar", "--size", 4)[0] == 1
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"T": [0, 1], "Y": [0, 1], "rows": [[0, 0], [1, 1]]}))
    assert not list(schema("finite_function").iter_errors(json.loads(g.read_text())))
    d = cli_json("formal_diag", "formal", "diag", "--file", g, "--alpha", "swap")
    assert d["escapes_all_columns"] is True
    d = cli_json("formal_diag", "formal", "diag", "--file", g, "--alpha", "identity")
    assert d["escapes_all_columns"] is False
    d = cli_json("formal_diag", "formal", "diag", "--file", g, "--alpha", "[1, 0]")
    assert d["escapes_all_columns"] is True
    t = tmp_path / "t.txt"
    t.write_text("yields falsehood when appended to its own quotation: ⟨hole⟩\n")
    q = cli_json("quine", "formal", "quine", "--template", t)
    assert q["verified"] is True
    t.write_text("⟨hole⟩ ⟨hole⟩")
    assert cli("formal", "quine", "--template", t)[0] == 1


def test_data_schemas():
    p = Polynomial.var(quad(2), 0, 2) ** 2 - 3
    assert not list(schema("polynomial").iter_errors(p.to_json()))
    assert not list(schema("polynomial").iter_errors(Polynomial.var(GAUSS, 1, 2).to_json()))
    assert not list(schema("polynomial").iter_errors(Polynomial.zero(ZZ, 0).to_json()))
    sys = FormalSystem(("a", "b"), ("a", "b"), ("a",), (0, 1), {"a": 0, "b": 1},
                       {(phi, n): "a" for phi in "ab" for n in (0, 1)})
    assert not list(schema("formal_system").iter_errors(sys.to_json()))


def test_selfcheck():
    rep = cli_json("selfcheck", "selfcheck")
    assert rep["passed"] and len(rep["modules"]) >= 5
    rep = cli_json("selfcheck", "selfcheck", "--inject-fault", "conjoin-product", expect=3)
    failed = [c["check"] for c in rep["checks"] if not c["passed"]]
    assert failed and all("conjoin" in c or "lemma1" in c for c in failed)


def test_usage_errors_and_help(capsys):
    assert cli("nt", "pell", "--a", "x")[0] == 2
    assert cli("bogus")[0] == 2
    assert cli("nt", "pell", "--help")[0] == 0
    assert "--a A" in capsys.readouterr().out
