"""Command-line interface: exact input grammar for curves, points and
field elements, one subcommand per experiment, and deterministic
JSON/CSV/text output.

Exit codes: 0 success, 2 invalid input, 3 input outside a supported
range.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction
from typing import List, Optional

from . import bounds, divpoints, fermat, groups, heights, torsion
from .curve import Curve
from .field import QQ, FieldError, QuadElem, QuadraticField, is_squarefree
from .poly import Poly

SCHEMA_VERSION = 1

_RATIONAL = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(r"^(%s)$" % _RATIONAL)
_QUAD_RE = re.compile(
    r"^(?:(%s)(?=[+-]|$))?([+-]?)(?:(%s)\*)?sqrt\((-?\d+)\)$" % (_RATIONAL, _RATIONAL)
)


class InputError(Exception):
    pass


class RangeError(Exception):
    pass


def parse_field_element(s: str):
    """Rational or quadratic field element from the grammar
    r | r*sqrt(d) | r+r*sqrt(d) | r-r*sqrt(d)."""
    s = s.strip().replace(" ", "")
    if not s:
        raise InputError("empty field element")
    m = _RAT_RE.match(s)
    if m:
        return Fraction(s)
    m = _QUAD_RE.match(s)
    if m is None:
        pos = _first_bad_position(s)
        raise InputError("syntax error in field element %r at position %d" % (s, pos))
    u = Fraction(m.group(1)) if m.group(1) else Fraction(0)
    v = Fraction(m.group(3)) if m.group(3) else Fraction(1)
    if m.group(2) == "-":
        v = -v
    d = int(m.group(4))
    if d in (0, 1):
        raise InputError("radicand %d does not define a quadratic field" % d)
    if not is_squarefree(d):
        raise InputError("radicand %d is not squarefree; reduce it first" % d)
    return QuadraticField(d).qf.elem(u, v)


def _first_bad_position(s: str) -> int:
    allowed = set("0123456789/+-*sqrt()")
    for i, ch in enumerate(s):
        if ch not in allowed:
            return i
    return len(s)


def format_field_element(x) -> str:
    if isinstance(x, QuadElem):
        d = x.field.d
        u, v = x.u, x.v
        sign = "-" if v < 0 else "+"
        return "%s%s%s*sqrt(%d)" % (u, sign, abs(v), d)
    return str(Fraction(x))


def parse_curve(s: str) -> Curve:
    """'a=-5,b=4' -> y^2 = x^3 + a x + b."""
    parts = dict()
    for item in s.split(","):
        if "=" not in item:
            raise InputError("curve spec must look like a=-5,b=4")
        k, _, v = item.partition("=")
        parts[k.strip()] = v.strip()
    if set(parts) != {"a", "b"}:
        raise InputError("curve spec needs exactly the keys a and b")
    a = parse_field_element(parts["a"])
    b = parse_field_element(parts["b"])
    field = QQ
    for c in (a, b):
        if isinstance(c, QuadElem):
            field = QuadraticField(c.field.d)
    if field != QQ:
        a, b = field.convert(a), field.convert(b)
    try:
        return Curve(a, b, field=field)
    except FieldError as exc:
        raise InputError(str(exc))


def parse_point(curve: Curve, s: str):
    s = s.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise InputError("point must look like (x,y)")
    body = s[1:-1]
    depth = 0
    split = None
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            split = i
            break
    if split is None:
        raise InputError("point must have two comma-separated coordinates")
    x = parse_field_element(body[:split])
    y = parse_field_element(body[split + 1:])
    field = curve.field
    for c in (x, y):
        if isinstance(c, QuadElem):
            k = QuadraticField(c.field.d)
            if field == QQ:
                field = k
            elif field != k:
                raise InputError("coordinates in distinct quadratic fields")
    ec = curve if field == curve.field else curve.base_change(field)
    try:
        return ec, ec.point(field.convert(x), field.convert(y))
    except FieldError as exc:
        raise InputError(str(exc))


def _poly_str(h: Poly) -> str:
    terms = []
    for i in range(h.degree, -1, -1):
        c = h[i]
        if not c:
            continue
        cs = format_field_element(c)
        if isinstance(c, QuadElem):
            cs = "(%s)" % cs
        if i == 0:
            terms.append(cs)
        elif i == 1:
            terms.append("%s*x" % cs)
        else:
            terms.append("%s*x^%d" % (cs, i))
    return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Command implementations: each returns a plain dict.
# ---------------------------------------------------------------------------


def _cmd_preimage(args) -> dict:
    e = parse_curve(args.curve)
    ec, p = parse_point(e, args.point)
    rep = divpoints.preimage_field_degrees(ec, p, args.n)
    return {
        "command": "preimage",
        "n": rep.n,
        "factors": [
            {"poly": _poly_str(h), "degree": h.degree, "y_splits": ys}
            for h, ys in rep.factors
        ],
        "degrees_over_base": rep.degrees_over_base,
        "degrees_over_q": rep.degrees_over_q,
    }


def _verdict_dict(name, v) -> dict:
    out = {
        "command": name,
        "verdict": v.verdict,
        "search_bound": float(v.search_bound_used.upper),
    }
    if v.witness is not None:
        n, q = v.witness
        out["witness"] = {
            "n": n,
            "x": format_field_element(q.x),
            "y": format_field_element(q.y),
        }
    else:
        out["witness"] = None
    return out


def _cmd_primitive(args) -> dict:
    e = parse_curve(args.curve)
    ec, p = parse_point(e, args.point)
    return _verdict_dict("primitive", divpoints.is_primitive(ec, p))


def _cmd_xprimitive(args) -> dict:
    e = parse_curve(args.curve)
    ec, p = parse_point(e, args.point)
    return _verdict_dict(
        "xprimitive", divpoints.is_x_primitive(ec, p, torsion_mode=args.torsion_mode)
    )


def _cmd_torsion_table(args) -> dict:
    e = parse_curve(args.curve)
    table = torsion.torsion_degree_table(e, args.bound)
    return {
        "command": "torsion-table",
        "bound": args.bound,
        "degrees": {str(n): d for n, d in sorted(table.items())},
    }


def _cmd_c_e(args) -> dict:
    e = parse_curve(args.curve)
    return {"command": "c-e", "c_e": torsion.c_e_constant(e)}


def _parse_group(args):
    orders = [int(t) for t in args.orders.split(",") if t]
    g = groups.FiniteAbelianGroup(orders)
    s = []
    for chunk in args.subset.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        s.append(g.element([int(t) for t in chunk.split(",")]))
    return g, s


def _cmd_group_witness(args) -> dict:
    import random

    g, s = _parse_group(args)
    rng = random.Random(args.seed) if args.seed is not None else None
    tr = groups.witness_big_order(g, s, rng=rng)
    return {
        "command": "group-witness",
        "exponent": g.exponent,
        "witness": list(tr.result.residues),
        "witness_order": groups.element_order(g, tr.result),
        "z_sequence": [list(z.residues) for z in tr.z_sequence],
        "r_values": tr.r_values,
    }


def _cmd_fano(args) -> dict:
    primes = [int(t) for t in args.primes.split(",") if t]
    g, s = groups.fano_construction(primes)
    tr = groups.witness_big_order(g, s)
    need = math.isqrt(g.exponent)
    if need * need < g.exponent:
        need += 1
    return {
        "command": "fano",
        "exponent": g.exponent,
        "max_order": groups.brute_force_max_order(g, s),
        "witness_order": groups.element_order(g, tr.result),
        "sqrt_bound": need,
    }


def _cmd_heights_count(args) -> dict:
    e = parse_curve(args.curve)
    count = heights.count_points_by_height(e, args.t, mode=args.mode)
    return {"command": "heights-count", "t": args.t, "mode": args.mode, "count": count}


def _cmd_density(args) -> dict:
    e = parse_curve(args.curve)
    count = heights.count_points_by_height(e, args.t, mode="weil")
    return {
        "command": "density",
        "t": args.t,
        "count": count,
        "count_over_t_squared": count / args.t**2,
        "reference_constant": 24 / math.pi**2,
    }


def _cmd_fermat_search(args) -> dict:
    e1 = parse_curve(args.curve)
    e2 = parse_curve(args.curve2)
    ec1, p1 = parse_point(e1, args.point)
    ec2, p2 = parse_point(e2, args.point2)
    sols = fermat.inverse_fermat_search(ec1, ec2, p1, p2, args.n, args.n2)
    return {
        "command": "fermat-search",
        "n1": args.n,
        "n2": args.n2,
        "classes": [
            {
                "x1_min_poly": _poly_str(s.x1_min_poly),
                "x2_min_poly": _poly_str(s.x2_min_poly),
                "degree": s.degree,
            }
            for s in sols
        ],
    }


def _cmd_torsion_on_locus(args) -> dict:
    e1 = parse_curve(args.curve)
    e2 = parse_curve(args.curve2)
    c = parse_field_element(args.c)
    if isinstance(c, QuadElem):
        raise InputError("locus constant must be rational")
    sols = fermat.torsion_on_locus(e1, e2, c, args.bound)
    return {
        "command": "torsion-on-locus",
        "c": str(c),
        "bound": args.bound,
        "classes": [
            {
                "order1": m,
                "x1_min_poly": _poly_str(h1),
                "order2": n,
                "x2_min_poly": _poly_str(h2),
            }
            for (m, h1), (n, h2) in sols
        ],
    }


def _cmd_thresholds(args) -> dict:
    p = bounds.BoundParams(
        g=args.g,
        c=args.c,
        c_prime=args.c_prime,
        L=args.L,
        L_prime=args.L_prime,
        L_dprime=args.L_dprime,
    )
    out = {
        "command": "thresholds",
        "g": args.g,
        "d": args.d,
        "intersection_threshold": bounds.intersection_threshold(p, args.d),
    }
    if args.n is not None:
        out["masser_lower_bound"] = bounds.masser_lower_bound(p, args.n)
        out["primitive_degree_bound"] = bounds.primitive_degree_bound(p, args.d, args.n)
        out["chain_check"] = bounds.chain_check(p, args.d, args.n)
    return out


_COMMANDS = {
    "preimage": _cmd_preimage,
    "primitive": _cmd_primitive,
    "xprimitive": _cmd_xprimitive,
    "torsion-table": _cmd_torsion_table,
    "c-e": _cmd_c_e,
    "group-witness": _cmd_group_witness,
    "fano": _cmd_fano,
    "heights-count": _cmd_heights_count,
    "density": _cmd_density,
    "fermat-search": _cmd_fermat_search,
    "torsion-on-locus": _cmd_torsion_on_locus,
    "thresholds": _cmd_thresholds,
}


def _add_format_flags(sp):
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--json", action="store_const", const="json", dest="format")
    grp.add_argument("--csv", action="store_const", const="csv", dest="format")
    sp.add_argument("--config", default=None, help="key=value defaults file")
    sp.set_defaults(format="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ellprim")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, **flag_specs):
        sp = sub.add_parser(name)
        for flag, spec in flag_specs.items():
            sp.add_argument("--" + flag, **spec)
        _add_format_flags(sp)
        return sp

    pt = {"required": True}
    add("preimage", curve=pt, point=pt, n={"type": int, "required": True})
    add("primitive", curve=pt, point=pt)
    sp = add("xprimitive", curve=pt, point=pt)
    sp.add_argument("--torsion-mode", action="store_true")
    add("torsion-table", curve=pt, bound={"type": int, "required": True})
    add("c-e", curve=pt)
    add(
        "group-witness",
        orders=pt,
        subset=pt,
        seed={"type": int, "default": None},
    )
    add("fano", primes=pt)
    add(
        "heights-count",
        curve=pt,
        t={"type": float, "required": True},
        mode={"choices": ["weil", "canonical"], "default": "weil"},
    )
    add("density", curve=pt, t={"type": float, "required": True})
    add(
        "fermat-search",
        curve=pt,
        curve2=pt,
        point=pt,
        point2=pt,
        n={"type": int, "required": True},
        n2={"type": int, "required": True},
    )
    add(
        "torsion-on-locus",
        curve=pt,
        curve2=pt,
        c=pt,
        bound={"type": int, "required": True},
    )
    add(
        "thresholds",
        g={"type": int, "default": 1},
        d={"type": int, "required": True},
        L={"type": float, "default": 1.0},
        c={"type": float, "default": 1.0},
        c_prime={"type": float, "default": 1.0, "dest": "c_prime"},
        L_prime={"type": float, "default": 1.0, "dest": "L_prime"},
        L_dprime={"type": float, "default": 1.0, "dest": "L_dprime"},
        n={"type": int, "default": None},
    )
    return ap


def _apply_config(args):
    """Fill in values from a key=value file for flags left at defaults."""
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError("cannot read config file: %s" % exc)
    parser_defaults = build_parser()
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError("config line without '=': %r" % line)
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if not hasattr(args, key):
            continue
        current = getattr(args, key)
        if current is None or current == _DEFAULTS.get(key, object()):
            cast = type(current) if current is not None else str
            if cast is bool:
                setattr(args, key, val.strip().lower() in ("1", "true", "yes"))
            elif current is None:
                setattr(args, key, val.strip())
            else:
                setattr(args, key, cast(val.strip()))


_DEFAULTS = {"format": "text", "mode": "weil", "g": 1, "L": 1.0, "seed": None}


def _emit_csv(report: dict, out) -> None:
    import csv

    flat = _flatten(report)
    w = csv.writer(out)
    w.writerow(sorted(flat))
    w.writerow([flat[k] for k in sorted(flat)])


def _flatten(d, prefix=""):
    out = {}
    if isinstance(d, dict):
        for k, v in d.items():
            out.update(_flatten(v, "%s%s." % (prefix, k)))
    elif isinstance(d, list):
        out[prefix.rstrip(".")] = json.dumps(d, sort_keys=True)
    else:
        out[prefix.rstrip(".")] = d
    return out


def _emit_text(report: dict, out) -> None:
    for k, v in sorted(_flatten(report).items()):
        out.write("%s: %s\n" % (k, v))


def run_command(argv: List[str], out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        _apply_config(args)
        if "precision_bits" not in args and os.environ.get("ELLPRIM_PRECISION_BITS"):
            args.precision_bits = int(os.environ["ELLPRIM_PRECISION_BITS"])
        report = _COMMANDS[args.cmd](args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except FieldError as exc:
        msg = str(exc)
        print("error: %s" % msg, file=sys.stderr)
        range_words = ("range", "supported", "exceeds", "bound must")
        return 3 if any(w in msg for w in range_words) else 2
    report["schema_version"] = SCHEMA_VERSION
    if args.format == "json":
        json.dump(report, out, sort_keys=True, separators=(",", ":"))
        out.write("\n")
    elif args.format == "csv":
        _emit_csv(report, out)
    else:
        _emit_text(report, out)
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
