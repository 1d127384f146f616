"""Torsion points of low degree, their orders, and the curve constant
lcm-of-low-degree-torsion-orders used by the primitivity machinery.

Everything is exact: torsion candidates come from primitive division
polynomials, never from floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional

from .curve import Curve, DivisionPolys, Point, scalar_mul
from .factor import factor_rational_poly, low_degree_rational_factors
from .field import QQ, FieldError, RationalField, rational_sqrt
from .poly import Poly
from .quotient import QuotientRing, sqrt_in_quotient

# Largest order of a torsion point on an elliptic curve over Q defined
# over a number field of degree <= 2 (classification of torsion over
# quadratic fields; the cyclic orders reach 16 and 18 there).
QUADRATIC_TORSION_ORDER_BOUND = 18


@dataclass(frozen=True)
class TorsionRecord:
    order: int
    x_minimal_poly: Poly
    point_degree: int


def torsion_order(p: Point, bound: int) -> Optional[int]:
    """Exact order of p if it is <= bound, else None."""
    if bound < 1:
        raise FieldError("bound must be positive")
    acc = p
    for n in range(1, bound + 1):
        if acc.is_infinity():
            return n
        acc = acc + p
    return None


@lru_cache(maxsize=None)
def _division_polys(curve: Curve) -> DivisionPolys:
    return DivisionPolys(curve)


@lru_cache(maxsize=None)
def primitive_division_poly(curve: Curve, n: int) -> Poly:
    """Monic polynomial vanishing exactly at x-coordinates of exact order n."""
    if n < 2:
        raise FieldError("primitive division polynomial needs n >= 2")
    dp = _division_polys(curve)
    f = dp.x_division_poly(n).monic()
    for d in range(2, n):
        if n % d == 0:
            f = f.exact_div(primitive_division_poly(curve, d))
    return f


def _y_field_degree(curve: Curve, h: Poly) -> Optional[int]:
    """Degree over Q of the point above a root of irreducible h, or None if > 2.

    h is an irreducible factor (degree 1 or 2) of a division polynomial
    over Q; the answer is deg(h) when the y-coordinate lies in Q(root),
    2*deg(h) otherwise.
    """
    if h.degree == 1:
        r = -h[0]
        c = curve.rhs(r)
        if not c or rational_sqrt(Fraction(c)) is not None:
            return 1
        return 2
    ring = QuotientRing(QQ, h)
    c = ring.element(curve.rhs_poly())
    if not c or sqrt_in_quotient(c) is not None:
        return 2
    return None  # degree 4 point


def low_degree_torsion(curve: Curve, deg_max: int, n_max: int) -> List[TorsionRecord]:
    """All torsion points of exact order 2..n_max defined over fields of
    degree <= deg_max (deg_max in {1, 2}), one record per x-orbit."""
    if deg_max not in (1, 2):
        raise FieldError("deg_max must be 1 or 2")
    if n_max < 1:
        raise FieldError("n_max must be positive")
    if not isinstance(curve.field, RationalField):
        raise FieldError("low_degree_torsion expects a curve over Q")
    out: List[TorsionRecord] = []
    for n in range(2, n_max + 1):
        f = primitive_division_poly(curve, n)
        if f.degree < 1:
            continue
        for h in low_degree_rational_factors(f, max_deg=2):
            if h.degree > deg_max:
                # a quadratic x can still carry a degree-2 point
                if deg_max < 2:
                    continue
            pd = _y_field_degree(curve, h)
            if pd is None or pd > deg_max:
                continue
            out.append(TorsionRecord(order=n, x_minimal_poly=h, point_degree=pd))
    return out


@lru_cache(maxsize=None)
def c_e_constant(curve: Curve) -> int:
    """lcm of the orders of all torsion points of degree <= 2 over Q."""
    records = low_degree_torsion(curve, 2, QUADRATIC_TORSION_ORDER_BOUND)
    return lcm(1, *[r.order for r in records])


def torsion_degree_table(curve: Curve, n_max: int) -> Dict[int, int]:
    """order -> minimal degree over Q of a point of that exact order."""
    if n_max > 12:
        raise FieldError("bound exceeds supported range")
    if n_max < 1:
        raise FieldError("n_max must be positive")
    table = {1: 1}
    for n in range(2, n_max + 1):
        best = None
        f = primitive_division_poly(curve, n)
        for h, _ in factor_rational_poly(f).factors:
            if h.degree <= 2:
                pd = _y_field_degree(curve, h)
                pd = pd if pd is not None else 2 * h.degree
            else:
                ring = QuotientRing(QQ, h)
                c = ring.element(curve.rhs_poly())
                splits = (not c) or sqrt_in_quotient(c) is not None
                pd = h.degree if splits else 2 * h.degree
            best = pd if best is None else min(best, pd)
        if best is not None:
            table[n] = best
    return table
