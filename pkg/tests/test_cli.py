import io
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ellprim.cli import (
    InputError,
    format_field_element,
    parse_curve,
    parse_field_element,
    parse_point,
    run_command,
)
from ellprim.field import QuadElem, QuadraticField


def _run(argv):
    buf = io.StringIO()
    rc = run_command(argv, out=buf)
    return rc, buf.getvalue()


def test_parse_field_element_examples():
    assert parse_field_element("25/16") == Fraction(25, 16)
    x = parse_field_element("1-1*sqrt(3)")
    assert isinstance(x, QuadElem)
    assert (x.u, x.v, x.field.d) == (1, -1, 3)
    y = parse_field_element("4+0*sqrt(3)")
    assert isinstance(y, QuadElem) and y.v == 0
    assert parse_field_element("sqrt(5)").u == 0


def test_parse_field_element_errors():
    with pytest.raises(InputError, match="squarefree"):
        parse_field_element("1+1*sqrt(12)")
    with pytest.raises(InputError, match="position"):
        parse_field_element("2+!*sqrt(3)")
    with pytest.raises(InputError):
        parse_field_element("")
    with pytest.raises(InputError):
        parse_field_element("sqrt(1)")


rationals = st.fractions(
    min_value=-10**6, max_value=10**6, max_denominator=10**4
)


@given(rationals)
def test_rational_round_trip(x):
    assert parse_field_element(format_field_element(x)) == x


@given(rationals, rationals, st.sampled_from([2, 3, 5, -3, -1, 15]))
def test_quad_round_trip(u, v, d):
    x = QuadraticField(d).qf.elem(u, v)
    y = parse_field_element(format_field_element(x))
    assert isinstance(y, QuadElem)
    assert (y.u, y.v, y.field.d) == (u, v, d)


def test_parse_curve_and_point():
    e = parse_curve("a=-5,b=4")
    assert (e.a, e.b) == (Fraction(-5), Fraction(4))
    ec, p = parse_point(e, "(4,4*sqrt(3))")
    assert ec.field == QuadraticField(3)
    assert p.x == ec.field.convert(4)
    with pytest.raises(InputError):
        parse_curve("a=-5")
    with pytest.raises(InputError):
        parse_point(e, "(1,2")


def test_preimage_command_json():
    rc, text = _run(
        ["preimage", "--curve", "a=-5,b=4", "--point", "(4,4*sqrt(3))",
         "--n", "2", "--json"]
    )
    assert rc == 0
    rep = json.loads(text)
    assert rep["schema_version"] == 1
    assert rep["degrees_over_base"] == [1, 1, 2]
    assert rep["degrees_over_q"] == [2, 2]
    polys = {f["poly"] for f in rep["factors"]}
    assert "(1+0*sqrt(3))*x^2 + (-16+0*sqrt(3))*x + (13+0*sqrt(3))" in polys


def test_fano_command_json():
    rc, text = _run(["fano", "--primes", "2,3,5,7,11,13,17", "--json"])
    assert rc == 0
    rep = json.loads(text)
    assert rep["witness_order"] >= rep["sqrt_bound"] == 715
    assert rep["exponent"] == 510510


def test_thresholds_command_json():
    rc, text = _run(["thresholds", "--d", "100", "--json"])
    assert rc == 0
    rep = json.loads(text)
    assert math.isclose(
        rep["intersection_threshold"], 100**2 * math.log(100) ** 2, rel_tol=1e-12
    )


def test_json_is_deterministic():
    argv = ["torsion-table", "--curve", "a=0,b=1", "--bound", "6", "--json"]
    assert _run(argv) == _run(argv)
    argv = ["group-witness", "--orders", "4,2,9", "--seed", "7", "--json"]
    assert _run(argv) == _run(argv)


def test_exit_codes():
    rc, _ = _run(["c-e", "--curve", "a=0,b=1", "--json"])
    assert rc == 0
    # invalid input: non-squarefree radicand
    rc, _ = _run(["c-e", "--curve", "a=0,b=1*sqrt(12)", "--json"])
    assert rc == 2
    # invalid input: torsion point without the torsion-mode flag
    rc, _ = _run(
        ["xprimitive", "--curve", "a=0,b=1", "--point", "(2,3)", "--json"]
    )
    assert rc == 2
    # out of supported range
    rc, _ = _run(
        ["torsion-on-locus", "--curve", "a=0,b=1", "--curve2", "a=0,b=1",
         "--c", "1", "--bound", "9", "--json"]
    )
    assert rc == 3


def test_csv_output_matches_json():
    rc, text = _run(["thresholds", "--d", "10", "--csv"])
    assert rc == 0
    header, row = text.strip().splitlines()
    cols = dict(zip(header.split(","), row.split(",")))
    assert cols["d"] == "10"
    assert math.isclose(
        float(cols["intersection_threshold"]), 100 * math.log(10) ** 2,
        rel_tol=1e-12,
    )


def test_config_file_defaults_and_override(tmp_path):
    cfg = tmp_path / "defaults.cfg"
    cfg.write_text("L=2.0\n# comment\n")
    rc, text = _run(["thresholds", "--d", "10", "--config", str(cfg), "--json"])
    assert rc == 0
    doubled = json.loads(text)["intersection_threshold"]
    rc, text = _run(["thresholds", "--d", "10", "--json"])
    assert math.isclose(doubled, 2 * json.loads(text)["intersection_threshold"])
    # explicit flag wins over the config file
    rc, text = _run(
        ["thresholds", "--d", "10", "--L", "3.0", "--config", str(cfg), "--json"]
    )
    assert math.isclose(
        json.loads(text)["intersection_threshold"],
        3 * 100 * math.log(10) ** 2,
        rel_tol=1e-12,
    )
