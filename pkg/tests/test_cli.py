import io
import json

import pytest
from hypothesis import given, strategies as st

from tcn.algebra import mk_torus, save_space
from tcn.cli import main
from tcn.expr import (CP, RP, Load, Product, SpaceSyntaxError, Sphere, Torus, build_space,
                      parse_space, pretty_print)

from oracles import random_algebra_dicts


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


# parser

def test_parse_examples():
    assert parse_space("S(2)") == Sphere(2)
    assert parse_space(" S ( 1 ) * S(1) ") == Product(Sphere(1), Sphere(1))
    assert parse_space("T(2)*RP(3)*CP(1)") == Product(Product(Torus(2), RP(3)), CP(1))
    assert parse_space("load(some/file.json)") == Load("some/file.json")


def test_parse_errors():
    with pytest.raises(SpaceSyntaxError) as exc:
        parse_space("Q(3)")
    assert exc.value.column == 1 and "unknown space name" in str(exc.value)
    with pytest.raises(SpaceSyntaxError, match="positive"):
        parse_space("S(0)")
    with pytest.raises(SpaceSyntaxError, match="column 6"):
        parse_space("S(2)*")
    with pytest.raises(SpaceSyntaxError):
        parse_space("s(2)")
    with pytest.raises(SpaceSyntaxError):
        parse_space("S(2) S(3)")


def test_product_of_circles_is_torus():
    a = build_space(parse_space("S(1)*S(1)")).algebra
    b = build_space(parse_space("T(2)")).algebra
    assert a.dim == b.dim and sorted(a.degrees) == sorted(b.degrees)


leaf = st.one_of(st.builds(Sphere, st.integers(1, 9)), st.builds(Torus, st.integers(1, 9)),
                 st.builds(RP, st.integers(1, 9)), st.builds(CP, st.integers(1, 9)),
                 st.builds(Load, st.from_regex(r"[a-z0-9_/.\-]{1,12}", fullmatch=True)))


@given(st.lists(leaf, min_size=1, max_size=5))
def test_parse_pretty_roundtrip(leaves):
    e = leaves[0]
    for x in leaves[1:]:
        e = Product(e, x)
    assert parse_space(pretty_print(e)) == e


# bounds

def test_bounds_even_sphere_range():
    code, out = run("bounds", "--space", "S(2)", "--n-range", "2..4", "--json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["exact"] for r in rows] == [3, 4, 5]
    keys = {"space", "n", "field", "lower", "lower_source", "zcl", "upper", "upper_cat",
            "upper_growth", "exact", "certificate"}
    assert all(set(r) == keys for r in rows)


def test_bounds_torus_certificate():
    code, out = run("bounds", "--space", "T(2)", "--n", "3", "--certificate", "--json")
    assert code == 0
    row = json.loads(out)
    assert row["lower"] == 5 and len(row["certificate"]["factors"]) == 4


def test_bounds_field_sensitivity():
    code, out = run("bounds", "--space", "S(2)", "--n", "2", "--field", "Fp:2", "--json")
    row = json.loads(out)
    assert code == 0 and row["field"] == "Fp:2"
    assert row["lower"] == 2 and row["upper"] == 3 and row["zcl"] == 1


def test_bounds_table_output():
    code, out = run("bounds", "--space", "S(3)", "--n", "3", "--certificate")
    assert code == 0
    assert "# field Q" in out and "S^3" in out and "z1 =" in out


def test_json_is_deterministic():
    args = ("bounds", "--space", "T(2)", "--n-range", "2..3", "--certificate", "--json")
    assert run(*args)[1] == run(*args)[1]


def test_bounds_input_errors():
    assert run("bounds", "--space", "Q(3)", "--n", "2")[0] == 2
    assert run("bounds", "--space", "S(2)")[0] == 2
    assert run("bounds", "--space", "S(2)", "--n", "1")[0] == 2
    assert run("bounds", "--space", "S(2)", "--n-range", "4..2")[0] == 2
    assert run("bounds", "--space", "S(2)", "--n", "2", "--field", "Fp:4")[0] == 2
    assert run("bounds", "--space", "load(/nonexistent.json)", "--n", "2")[0] == 2
    assert run("bounds", "--space", "RP(2)", "--n", "2", "--field", "Q")[0] == 2
    assert run("frobnicate")[0] == 2


def test_rp_defaults_to_f2():
    code, out = run("bounds", "--space", "RP(2)", "--n", "2", "--json")
    assert code == 0 and json.loads(out)["field"] == "Fp:2"


def test_max_dim_cap(monkeypatch):
    monkeypatch.setenv("TCN_MAX_DIM", "100")
    code, _ = run("bounds", "--space", "T(2)", "--n", "4")
    assert code == 2
    monkeypatch.setenv("TCN_MAX_DIM", "256")
    assert run("bounds", "--space", "T(2)", "--n", "4")[0] == 0


def test_metadata_inconsistency_exit_code(tmp_path):
    data = {"name": "lie", "field": "Q",
            "basis": [{"name": "1", "degree": 0}, {"name": "u", "degree": 2}],
            "unit": "1", "products": [],
            "meta": {"dim": 2, "conn": 1, "cat_upper": 1, "tc2": 1}}
    path = tmp_path / "lie.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, _ = run("bounds", "--space", "load(%s)" % path, "--n", "2")
    assert code == 3


def test_load_and_product(tmp_path):
    path = tmp_path / "t2.json"
    save_space(mk_torus(2), path)
    code, out = run("bounds", "--space", "load(%s)*S(1)" % path, "--n", "2", "--json")
    row = json.loads(out)
    assert code == 0 and row["lower"] == 4 and row["upper"] == 7


# validate

def test_validate_command(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(random_algebra_dicts(1, seed=4)[0]), encoding="utf-8")
    code, out = run("validate", str(good))
    assert code == 0 and "ok" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "name": "bad", "field": "Q",
        "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 1},
                  {"name": "y", "degree": 1}, {"name": "xy", "degree": 2}],
        "unit": "1",
        "products": [{"left": "x", "right": "y", "result": [{"basis": "xy", "coeff": "1"}]},
                     {"left": "y", "right": "x", "result": [{"basis": "xy", "coeff": "1"}]}]}),
        encoding="utf-8")
    code, out = run("validate", "load(%s)" % bad)
    assert code == 2 and "commutativity" in out
    assert run("bounds", "--space", "load(%s)" % bad, "--n", "2")[0] == 2


# plan

def test_plan_random(tmp_path):
    dest = tmp_path / "plan.json"
    code, out = run("plan", "--k", "3", "--n", "3", "--random", "42", "--out", str(dest))
    assert code == 0
    data = json.loads(dest.read_text(encoding="utf-8"))
    assert data["k"] == 3 and data["n"] == 3 and len(data["paths"]) == 3
    assert "domain" in out and "residuals" in out
    resid = [float(r) for r in out.split("residuals:")[1].split()]
    assert max(resid) < 1e-9


def test_plan_even_sphere_rejected(capsys):
    code, _ = run("plan", "--k", "2", "--n", "2", "--random", "1")
    assert code == 2
    assert "no planner for even spheres" in capsys.readouterr().err


def test_plan_antipodal_points(tmp_path):
    pts = tmp_path / "antipodal.json"
    pts.write_text("[[1, 0], [-1, 0]]", encoding="utf-8")
    code, out = run("plan", "--k", "1", "--n", "2", "--points", str(pts), "--samples", "4")
    assert code == 0
    data = json.loads(out)
    assert data["domain"] == 1
    mid = data["paths"][1][2]
    assert abs(mid[0]) < 1e-12 and abs(mid[1] - 1) < 1e-12


def test_plan_input_errors(tmp_path):
    assert run("plan", "--k", "3", "--n", "3")[0] == 2
    pts = tmp_path / "p.json"
    pts.write_text("[[1, 0, 0, 0]]", encoding="utf-8")
    assert run("plan", "--k", "3", "--n", "2", "--points", str(pts))[0] == 2
    assert run("plan", "--k", "1", "--points", str(pts))[0] == 2


# gap

def test_gap_command():
    code, out = run("gap", "--n", "3")
    assert code == 0 and out.splitlines()[0] == "S²: 4 (exact) | T²: ≥5"
    assert run("gap", "--n", "2")[0] == 2


@pytest.mark.slow
def test_gap_n5():
    code, out = run("gap", "--n", "5")
    assert code == 0 and out.splitlines()[0] == "S²: 6 (exact) | T²: ≥9"
