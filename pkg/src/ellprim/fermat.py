"""The inverse Fermat machinery on a product of two elliptic curves:
analysis of the locus x1 + x2 = 1, the search for division-point pairs
landing on it, and torsion counting on translated loci x1 + x2 = c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .curve import Curve, DivisionPolys, Point
from .divpoints import _field_of, _field_of_point, preimage_polynomial
from .factor import factor_quadratic_field_poly, factor_rational_poly
from .field import QQ, FieldError, QuadraticField, RationalField
from .heights import _rational_curve
from .poly import Poly
from .quotient import QuotientRing, quotient_field
from .torsion import primitive_division_poly


@dataclass
class LocusReport:
    resultant_of_cubics: Fraction
    cubics_share_root: bool
    rhs_is_square: bool
    irreducible: bool
    subgroup_excluded: bool


@dataclass
class SolutionClass:
    """One Galois class of solutions; x2 is determined by x1 through the
    locus equation, so both minimal polynomials are over the same field."""

    x1_min_poly: Poly
    x2_min_poly: Poly
    degree: int


def _is_poly_square(f: Poly) -> bool:
    if f.is_zero():
        return True
    if f.degree % 2:
        return False
    from .field import rational_sqrt

    fac = factor_rational_poly(f)
    if rational_sqrt(Fraction(fac.unit)) is None:
        return False
    return all(m % 2 == 0 for _h, m in fac.factors)


def analyze_special_locus(e1: Curve, e2: Curve) -> LocusReport:
    """Irreducibility and subgroup-exclusion certificates for the locus
    x1 + x2 = 1 inside E1 x E2.

    The locus is the plane curve y1^2 = f1(x), y2^2 = f2(1-x); it is
    irreducible when f2(1-x) is neither a square nor sharing a root with
    f1 (so y2 is not of the form g(x) or y1*g(x)).  Subgroup structure
    is excluded because x([2]P) = phi2(x)/psi2^2(x) tends to x/4 + O(1):
    4*phi2 - x*psi2^2 drops to degree <= 2, so the doubled locus has
    x1 + x2 -> 1/2 at infinity, not 1.
    """
    b1 = _rational_curve(e1)
    b2 = _rational_curve(e2)
    f1 = b1.rhs_poly()
    one_minus_x = Poly(QQ, [Fraction(1), Fraction(-1)])
    f2c = b2.rhs_poly()(one_minus_x)
    res = Fraction(f1.resultant(f2c))
    share = res == 0
    sq = _is_poly_square(f2c)
    subgroup_ok = True
    x = Poly.x(QQ)
    for b in (b1, b2):
        dp = DivisionPolys(b)
        drop = dp.phi(2) * Fraction(4) - x * dp.psi_squared(2)
        if drop.degree > 2:
            subgroup_ok = False
    return LocusReport(
        resultant_of_cubics=res,
        cubics_share_root=share,
        rhs_is_square=sq,
        irreducible=not share and not sq,
        subgroup_excluded=subgroup_ok,
    )


# ---------------------------------------------------------------------------
# Compositum of the (at most quadratic) fields of definition.
# ---------------------------------------------------------------------------


def _compositum(k1, k2):
    """(field, lift1, lift2, degree over Q, tower ring or None)."""
    if isinstance(k1, RationalField) and isinstance(k2, RationalField):
        return QQ, QQ.convert, QQ.convert, 1, None
    if isinstance(k1, RationalField):
        return k2, k2.convert, k2.convert, 2, None
    if isinstance(k2, RationalField):
        return k1, k1.convert, k1.convert, 2, None
    if k1.d == k2.d:
        return k1, k1.convert, k1.convert, 2, None
    # biquadratic tower: k1 extended by sqrt(d2)
    d2 = k2.d
    mod = Poly(k1, [k1.convert(-d2), k1.zero(), k1.one()])
    ring = QuotientRing(k1, mod)
    w = quotient_field(ring)

    def lift1(a):
        return w.convert(ring.convert(k1.convert(a)))

    def lift2(a):
        a = k2.convert(a)
        rep = Poly(k1, [k1.convert(a.u), k1.convert(a.v)])
        return w.convert(ring.element(rep))

    return w, lift1, lift2, 4, ring


def _tower_conj(ring: QuotientRing, c):
    """Conjugation sqrt(d2) -> -sqrt(d2) on a wrapped tower element."""
    rep = c.elem.rep
    coeffs = [(-v if i % 2 else v) for i, v in enumerate(rep.coeffs)]
    return type(c)(c.field, ring.element(Poly(ring.base, coeffs)))


def _factor_over_compositum(g: Poly, field, tower: Optional[QuotientRing]):
    """Monic irreducible factors of a squarefree g over the compositum."""
    if tower is None:
        if isinstance(field, RationalField):
            fac = factor_rational_poly(g)
        else:
            fac = factor_quadratic_field_poly(g)
        return [h for h, _m in fac.factors]
    if g.degree <= 1:
        return [g.monic()]
    k1 = tower.base
    theta = field.convert(tower.gen())
    x = Poly.x(field)
    for s in range(0, 4 * g.degree + 9):
        gs = g(x - theta * s)
        conj = Poly(field, [_tower_conj(tower, c) for c in gs.coeffs])
        norm_w = gs * conj
        coeffs = []
        for c in norm_w.coeffs:
            rep = c.elem.rep
            assert rep.degree <= 0, "tower norm must land in the base field"
            coeffs.append(rep[0] if rep.coeffs else k1.zero())
        norm = Poly(k1, coeffs)
        if not norm.is_squarefree():
            continue
        out = []
        for nh, _m in factor_quadratic_field_poly(norm).factors:
            nh_w = Poly(field, [field.convert(tower.convert(c)) for c in nh.coeffs])
            h = gs.gcd(nh_w)
            if h.degree > 0:
                out.append(h(x + theta * s).monic())
        assert sum(h.degree for h in out) == g.degree
        return out
    raise FieldError("no squarefree shift found for the tower norm")


def _verify_class(e: Curve, field, xp, yp, n: int, alpha_poly: Poly, h: Poly):
    """Re-verify [n]Q = +/-P in field[x]/(h) at x(Q) = alpha_poly(xbar)."""
    ring = QuotientRing(field, h)
    alpha = ring.element(alpha_poly % h)
    ec = Curve(field.convert(e.a), field.convert(e.b), field=field)
    dp = DivisionPolys(ec)
    if n == 1:
        assert alpha == ring.convert(xp), "direct preimage mismatch"
        return
    phi, psi2 = dp.x_multiple_map(n)
    phi_a = _eval(phi, ring, alpha)
    psi2_a = _eval(psi2, ring, alpha)
    assert phi_a == psi2_a * xp, "x-coordinate relation failed"
    if yp:
        num, den = dp.y_multiple_ratio(n)
        num_a = _eval(num, ring, alpha)
        den_a = _eval(den, ring, alpha)
        c_a = _eval(ec.rhs_poly(), ring, alpha)
        assert c_a * num_a * num_a == den_a * den_a * (yp * yp), (
            "y-multiplier relation failed"
        )


def _eval(f: Poly, ring: QuotientRing, alpha):
    out = ring.zero()
    for c in reversed(f.coeffs):
        out = out * alpha + ring.convert(c)
    return out


def inverse_fermat_search(
    e1: Curve, e2: Curve, p1: Point, p2: Point, n1: int, n2: int
) -> List[SolutionClass]:
    """All Galois classes of pairs (Q1, Q2) with [n1]Q1 = +/-P1,
    [n2]Q2 = +/-P2 and x1(Q1) + x2(Q2) = 1."""
    if not (1 <= n1 <= 6 and 1 <= n2 <= 6):
        raise FieldError("N out of range (1..6)")
    if p1.is_infinity() or p2.is_infinity():
        raise FieldError("origin input")
    k1 = _field_of_point(p1)
    k2 = _field_of_point(p2)
    field, lift1, lift2, deg_q, tower = _compositum(k1, k2)
    pre1 = preimage_polynomial(e1, k1.convert(p1.x), n1)
    if pre1.field != k1:
        pre1 = pre1.map_field(k1)
    pre2 = preimage_polynomial(e2, k2.convert(p2.x), n2)
    if pre2.field != k2:
        pre2 = pre2.map_field(k2)
    one_minus_x = Poly(k2, [k2.one(), -k2.one()])
    pre2c = pre2(one_minus_x)
    g1 = Poly(field, [lift1(c) for c in pre1.coeffs])
    g2 = Poly(field, [lift2(c) for c in pre2c.coeffs])
    g = g1.gcd(g2)
    if g.degree <= 0:
        return []
    if g.degree * deg_q > 4:
        raise FieldError("common preimage locus too large to classify")
    g = g.squarefree_part()
    x = Poly.x(field)
    out = []
    for h in _factor_over_compositum(g, field, tower):
        _verify_class(e1, field, lift1(k1.convert(p1.x)), lift1(k1.convert(p1.y)), n1, x, h)
        beta = Poly(field, [field.one()]) - x  # x2 = 1 - x1 mod h
        _verify_class(e2, field, lift2(k2.convert(p2.x)), lift2(k2.convert(p2.y)), n2, beta, h)
        x2_poly = h(Poly(field, [field.one(), -field.one()])).monic()
        out.append(SolutionClass(x1_min_poly=h, x2_min_poly=x2_poly, degree=h.degree))
    return out


def torsion_on_locus(e1: Curve, e2: Curve, c, bound: int):
    """Classes of torsion pairs on x1 + x2 = c with both orders in
    2..bound: list of ((m, x1 min poly), (n, x2 min poly))."""
    if bound > 8:
        raise FieldError("B exceeds supported range (<= 8)")
    if bound < 1:
        raise FieldError("B must be positive")
    b1 = _rational_curve(e1)
    b2 = _rational_curve(e2)
    c = Fraction(c)
    c_minus_x = Poly(QQ, [c, Fraction(-1)])
    out = []
    for m in range(2, bound + 1):
        f1 = primitive_division_poly(b1, m)
        for n in range(2, bound + 1):
            f2 = primitive_division_poly(b2, n)(c_minus_x)
            g = f1.gcd(f2)
            if g.degree <= 0:
                continue
            for h, _mult in factor_rational_poly(g).factors:
                x2_poly = h(c_minus_x).monic()
                out.append(((m, h), (n, x2_poly)))
    return out
