"""Division points: preimages under [N], their fields of definition,
primitivity decision procedures, and orders of Galois conjugate
differences.

The root object is the preimage polynomial of x(P) under the [N]
x-coordinate map; everything else is exact work in the quotient
algebras of its irreducible factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .curve import Curve, DivisionPolys, Point, scalar_mul
from .factor import factor_quadratic_field_poly, factor_rational_poly
from .field import (QQ, FieldError, QuadElem, QuadraticField, RationalField,
                    rational_sqrt)
from .heights import (HeightValue, canonical_height, canonical_height_of_x,
                      kappa_minus_bound, small_canonical_height_points,
                      _rational_curve, _x_is_torsion)
from .poly import Poly
from .quotient import QuotientRing, quotient_field, sqrt_in_quotient
from .torsion import (QUADRATIC_TORSION_ORDER_BOUND, low_degree_torsion,
                      torsion_order)


@dataclass
class PreimageReport:
    n: int
    base_field: object
    factors: List[Tuple[Poly, bool]]  # (irreducible factor, y_splits)
    degrees_over_base: List[int]
    degrees_over_q: List[int]


@dataclass
class PrimitivityVerdict:
    verdict: bool
    witness: Optional[Tuple[int, Point]]
    search_bound_used: HeightValue


def _field_of(x) -> object:
    if isinstance(x, QuadElem):
        if x.is_rational():
            return QQ
        return QuadraticField(x.field.d)
    return QQ


def _field_of_point(p: Point):
    fx = _field_of(p.x)
    fy = _field_of(p.y)
    if isinstance(fx, QuadraticField):
        if isinstance(fy, QuadraticField) and fy != fx:
            raise FieldError("point coordinates in distinct quadratic fields")
        return fx
    return fy


def preimage_polynomial(e: Curve, xp, n: int) -> Poly:
    """Monic polynomial whose roots are the x-coordinates of the points Q
    with [n]Q = +/-P, where x(P) = xp."""
    if n < 1:
        raise FieldError("preimage_polynomial needs n >= 1")
    field = _field_of(xp)
    xp = field.convert(xp)
    base = _rational_curve(e)
    ec = base if isinstance(field, RationalField) else base.base_change(field)
    x = Poly.x(field)
    if n == 1:
        return x - xp
    dp = DivisionPolys(ec)
    pre = dp.psi_squared(n) * xp - dp.phi(n)
    return pre.monic()


def _factor_over(field, f: Poly):
    if isinstance(field, RationalField):
        return factor_rational_poly(f)
    return factor_quadratic_field_poly(f)


def _y_ratio_at(dp: DivisionPolys, n: int, ring: QuotientRing, alpha=None):
    """(num(alpha), den(alpha)) of the y-multiplier for [n] in the algebra."""
    num, den = dp.y_multiple_ratio(n)
    return _eval_in_ring(num, ring), _eval_in_ring(den, ring)


def _eval_in_ring(f: Poly, ring: QuotientRing):
    return ring.element(f.map_field(ring.base) % ring.modulus)


def preimage_field_degrees(e: Curve, p: Point, n: int) -> PreimageReport:
    """Factor the preimage polynomial over the field of definition of P
    and report the degrees of the fields of definition of the actual
    preimage points."""
    if p.is_infinity():
        raise FieldError("origin has trivial preimage structure")
    if not 1 <= n <= 8:
        raise FieldError("N out of supported range (1..8)")
    kp = _field_of_point(p)
    d0 = 2 if isinstance(kp, QuadraticField) else 1
    xp, yp = kp.convert(p.x), kp.convert(p.y)
    ec = _rational_curve(e).base_change(kp) if d0 == 2 else _rational_curve(e)
    pre = preimage_polynomial(e, xp, n)
    if pre.field != kp:
        pre = pre.map_field(kp)
    dp = DivisionPolys(ec)
    factors = []
    degs_base = []
    for h, _m in _factor_over(kp, pre).factors:
        ring = QuotientRing(kp, h)
        c_alpha = _eval_in_ring(ec.rhs_poly(), ring)
        if yp:
            if n == 1:
                y_splits = True
            else:
                num_a, den_a = _y_ratio_at(dp, n, ring, None)
                # on the curve: C(x) * (num/den)^2 = y(P)^2 mod h
                assert c_alpha * num_a * num_a == den_a * den_a * (yp * yp), (
                    "y-multiplier identity failed on a preimage factor"
                )
                y_splits = True
        else:
            # 2-torsion P: y(Q)^2 = C(alpha) must itself be a square
            y_splits = (not c_alpha) or sqrt_in_quotient(c_alpha) is not None
        factors.append((h, y_splits))
        degs_base.append(h.degree if y_splits else 2 * h.degree)
    degs_base.sort()
    # x-factor degrees over Q: factor the x-polynomial rationally when
    # its coefficients are rational, else scale by the base field degree
    degs_q = None
    if d0 == 2:
        try:
            pre_q = pre.map_field(QQ, lambda c: kp.convert(c).to_rational())
        except FieldError:
            pre_q = None
        if pre_q is not None:
            degs_q = sorted(h.degree for h, _m in factor_rational_poly(pre_q).factors)
    if degs_q is None:
        degs_q = sorted(d0 * h.degree for h, _ys in factors)
    return PreimageReport(
        n=n,
        base_field=kp,
        factors=factors,
        degrees_over_base=degs_base,
        degrees_over_q=degs_q,
    )


def _exact_preimage_y(e: Curve, xq, yp, n: int):
    """y(Q) with [n]Q = P exactly, given x(Q); needs y(P) != 0.

    y([n]Q) = y(Q) * num(x(Q))/den(x(Q)), so y(Q) = y(P) * den/num.
    """
    field = _field_of(yp) if _field_of(yp) != QQ else _field_of(xq)
    ec = _rational_curve(e) if isinstance(field, RationalField) else _rational_curve(e).base_change(field)
    dp = DivisionPolys(ec)
    num, den = dp.y_multiple_ratio(n)
    xq = field.convert(xq)
    nv, dv = num(xq), den(xq)
    if not nv:
        return None
    return field.convert(yp) * dv / nv


def _verify_witness(e: Curve, n: int, q: Point, p: Point) -> bool:
    return scalar_mul(n, q) == p


def is_x_primitive(e: Curve, p: Point, torsion_mode: bool = False) -> PrimitivityVerdict:
    """Decide whether any Q with rational x-coordinate satisfies [N]Q = P
    for some N >= 2 (false = such a Q exists, with witness)."""
    if p.is_infinity():
        raise FieldError("origin input")
    xp = p.x
    if isinstance(xp, QuadElem):
        if not xp.is_rational():
            raise FieldError("is_x_primitive needs a rational x-coordinate")
        xp = xp.to_rational()
    xp = Fraction(xp)
    base = _rational_curve(e)
    if _x_is_torsion(base, xp):
        if not torsion_mode:
            raise FieldError("torsion input requires torsion-mode search")
        return _torsion_mode_x_search(e, p)
    hp = canonical_height_of_x(base, xp, 1e-6)
    bound = float(hp.upper) / 4
    verdict_bound = HeightValue(
        bound + kappa_minus_bound(base), bound + kappa_minus_bound(base)
    )
    # every x-rational Q with [N]Q = P has hhat(Q) = hhat(P)/N^2 <= bound
    for xq in small_canonical_height_points(base, bound + 0.01):
        hq = canonical_height_of_x(base, xq, 1e-6)
        if not hq.certainly_positive():
            continue
        lo = float(hp.lower) / float(hq.upper)
        hi = float(hp.upper) / float(hq.lower)
        for nn in range(max(2, math.isqrt(int(lo))), math.isqrt(int(hi)) + 2):
            if not lo <= nn * nn <= hi:
                continue
            if _x_maps_to(base, xq, nn, xp):
                q = _lift_preimage(e, xq, p, nn)
                if q is not None:
                    return PrimitivityVerdict(False, (nn, q), verdict_bound)
    return PrimitivityVerdict(True, None, verdict_bound)


def _x_maps_to(e: Curve, xq: Fraction, n: int, xp: Fraction) -> bool:
    dp = DivisionPolys(_rational_curve(e))
    phi, psi2 = dp.x_multiple_map(n)
    return phi(xq) == xp * psi2(xq)


def _lift_preimage(e: Curve, xq, p: Point, n: int) -> Optional[Point]:
    """The point Q above xq with [n]Q = P exactly, over the field of P."""
    yp = p.y
    yq = _exact_preimage_y(e, xq, yp, n)
    if yq is None:
        return None
    field = _field_of(yq)
    ec = _rational_curve(e) if isinstance(field, RationalField) else _rational_curve(e).base_change(field)
    try:
        q = ec.point(field.convert(xq), yq)
    except FieldError:
        return None
    pp = ec.point(field.convert(p.x), field.convert(p.y))
    if _verify_witness(ec, n, q, pp):
        return q
    return None


def _torsion_mode_x_search(e: Curve, p: Point) -> PrimitivityVerdict:
    base = _rational_curve(e)
    order = None
    # the order of a low-degree torsion point is at most 18
    order = torsion_order(p, QUADRATIC_TORSION_ORDER_BOUND)
    if order is None:
        raise FieldError("torsion order exceeds the supported bound")
    zero_bound = HeightValue.exact(0)
    n_max = order * QUADRATIC_TORSION_ORDER_BOUND
    candidates = []
    # all x-rational torsion candidates live in degree <= 2
    for rec in low_degree_torsion(base, 2, QUADRATIC_TORSION_ORDER_BOUND):
        if rec.x_minimal_poly.degree != 1:
            continue
        xq = Fraction(-rec.x_minimal_poly[0])
        c = base.rhs(xq)
        if rational_sqrt(Fraction(c)) is not None:
            field = QQ
        else:
            from .field import _squarefree_part

            num_den = Fraction(c)
            d = _squarefree_part(num_den.numerator * num_den.denominator)
            field = QuadraticField(d)
        ec = base if field == QQ else base.base_change(field)
        lifted = ec.lift_x(field.convert(xq))
        if lifted is None:
            continue
        try:
            pp = ec.point(field.convert(p.x), field.convert(p.y))
        except FieldError:
            continue  # P not expressible over this candidate's field
        for q in lifted:
            candidates.append((q, pp))
    # smallest multiplier first so the reported witness has minimal N
    for nn in range(2, n_max + 1):
        for q, pp in candidates:
            if scalar_mul(nn, q) == pp:
                return PrimitivityVerdict(False, (nn, q), zero_bound)
    return PrimitivityVerdict(True, None, zero_bound)


def is_primitive(e: Curve, p: Point) -> PrimitivityVerdict:
    """Decide whether [N]Q = P has a solution Q over the field of
    definition of P for some N >= 2."""
    if p.is_infinity():
        raise FieldError("origin input")
    kp = _field_of_point(p)
    base = _rational_curve(e)
    x_for_torsion = p.x
    if isinstance(x_for_torsion, QuadElem) and x_for_torsion.is_rational():
        x_for_torsion = x_for_torsion.to_rational()
    if _x_is_torsion(base, x_for_torsion):
        raise FieldError("torsion input: primitivity is defined for non-torsion points")
    if isinstance(kp, RationalField):
        return _is_primitive_rational(e, p)
    return _is_primitive_quadratic(e, p, kp)


def _is_primitive_rational(e: Curve, p: Point) -> PrimitivityVerdict:
    base = _rational_curve(e)
    xp = Fraction(p.x if not isinstance(p.x, QuadElem) else p.x.to_rational())
    hp = canonical_height_of_x(base, xp, 1e-6)
    bound = float(hp.upper) / 4
    verdict_bound = HeightValue.exact(bound + kappa_minus_bound(base))
    for xq in small_canonical_height_points(base, bound + 0.01):
        if rational_sqrt(Fraction(base.rhs(xq))) is None:
            continue  # Q must be defined over Q
        hq = canonical_height_of_x(base, xq, 1e-6)
        if not hq.certainly_positive():
            continue
        lo = float(hp.lower) / float(hq.upper)
        hi = float(hp.upper) / float(hq.lower)
        for nn in range(max(2, math.isqrt(int(lo))), math.isqrt(int(hi)) + 2):
            if not lo <= nn * nn <= hi:
                continue
            if _x_maps_to(base, xq, nn, xp):
                q = _lift_preimage(e, xq, p, nn)
                if q is not None and _field_of_point(q) == QQ:
                    return PrimitivityVerdict(False, (nn, q), verdict_bound)
    return PrimitivityVerdict(True, None, verdict_bound)


def _is_primitive_quadratic(e: Curve, p: Point, kp: QuadraticField) -> PrimitivityVerdict:
    """Exhaustive box search over x = (u + v sqrt(d))/w.

    Box: max(|u|, |v|*sqrt(|d|), w) <= exp(hhat(P)/4 + kappa_minus); the
    shells are scanned in increasing sup-norm so false verdicts (the
    common case in practice) exit early.
    """
    base = _rational_curve(e)
    d = kp.d
    ec = base.base_change(kp)
    pp = ec.point(kp.convert(p.x), kp.convert(p.y))
    hp = canonical_height(ec, pp, 1e-4)
    bound = float(hp.upper) / 4 + kappa_minus_bound(base)
    verdict_bound = HeightValue.exact(bound)
    lim = int(math.floor(math.exp(bound))) + 1
    vlim = int(math.floor(math.exp(bound) / math.sqrt(abs(d)))) + 1
    sq = kp.qf.sqrt_gen()
    hp_lo, hp_hi = float(hp.lower), float(hp.upper)
    for shell in range(0, lim + 1):
        for u, v, w in _shell_triples(shell, lim, vlim):
            if w < 1 or math.gcd(math.gcd(abs(u), abs(v)), w) != 1:
                continue
            if v == 0 and w == 0:
                continue
            xq = (kp.convert(Fraction(u, w)) + sq * Fraction(v, w))
            if xq == kp.convert(pp.x):
                continue
            lifted = ec.lift_x(xq)
            if lifted is None:
                continue
            if _x_is_torsion(base, xq):
                continue
            hq = canonical_height(ec, lifted[0], 1e-3)
            if not hq.certainly_positive():
                hq = canonical_height(ec, lifted[0], 1e-5)
                if not hq.certainly_positive():
                    continue
            lo = hp_lo / float(hq.upper)
            hi = hp_hi / float(hq.lower)
            for nn in range(max(2, math.isqrt(max(0, int(lo)))), math.isqrt(int(hi)) + 2):
                if not lo <= nn * nn <= hi:
                    continue
                for q in lifted:
                    if scalar_mul(nn, q) == pp:
                        return PrimitivityVerdict(False, (nn, q), verdict_bound)
    return PrimitivityVerdict(True, None, verdict_bound)


def _shell_triples(shell: int, lim: int, vlim: int):
    """Triples (u, v, w) with sup-norm shell index `shell`."""
    us = range(-min(shell, lim), min(shell, lim) + 1)
    # positive v first so the reported witness uses +sqrt(d) when both
    # conjugate candidates succeed
    vs = range(min(shell, vlim), -min(shell, vlim) - 1, -1)
    ws = range(1, min(shell, lim) + 1)
    for u in us:
        for v in vs:
            for w in ws:
                if max(abs(u), abs(v), w) == shell:
                    yield u, v, w


# ---------------------------------------------------------------------------
# Galois conjugate differences.
# ---------------------------------------------------------------------------


def galois_difference_orders_by_factor(e: Curve, p: Point, n: int):
    """For each irreducible preimage factor: the multiset of exact orders
    of Q' - Q over all conjugates Q' of one preimage Q."""
    if n not in (2, 3, 4):
        raise FieldError("N outside supported range {2,3,4}")
    if p.is_infinity():
        raise FieldError("origin input")
    kp = _field_of_point(p)
    xp, yp = kp.convert(p.x), kp.convert(p.y)
    if not yp:
        raise FieldError("2-torsion input not supported")
    ec = _rational_curve(e) if isinstance(kp, RationalField) else _rational_curve(e).base_change(kp)
    dp = DivisionPolys(ec)
    pre = preimage_polynomial(e, xp, n)
    if pre.field != kp:
        pre = pre.map_field(kp)
    divisors = [m for m in range(1, n + 1) if n % m == 0]
    out = []
    for h, _m in _factor_over(kp, pre).factors:
        ring = QuotientRing(kp, h)
        fk = quotient_field(ring)
        alpha = fk.convert(ring.gen())
        t = Poly.x(fk)
        ht = Poly(fk, [fk.convert(ring.convert(c)) for c in h.coeffs])
        counts = {}
        for m in divisors:
            if m == n:
                counts[m] = h.degree
                continue
            g = _conjugate_condition_gcd(dp, ring, fk, alpha, t, ht, m, n)
            counts[m] = g.degree
        exact = {}
        for m in divisors:
            exact[m] = counts[m] - sum(exact[dd] for dd in divisors if dd < m and m % dd == 0)
        multiset = []
        for m in divisors:
            multiset.extend([m] * exact[m])
        assert len(multiset) == h.degree
        out.append((h, sorted(multiset)))
    return out


def _conjugate_condition_gcd(dp, ring, fk, alpha, t, ht, m, n):
    """gcd over K1[t] of h(t) with '[m]Q'(t) = [m]Q(alpha)'."""
    phi_m, psi2_m = dp.x_multiple_map(m)
    phi_t = _lift_poly(phi_m, fk)
    psi2_t = _lift_poly(psi2_m, fk)
    phi_a = _at_alpha(phi_m, fk, alpha)
    psi2_a = _at_alpha(psi2_m, fk, alpha)
    xcond = phi_t * psi2_a - psi2_t * phi_a
    g = ht.gcd(xcond)
    if g.degree <= 0:
        return g
    # y-condition: y(Q')*R_m(t) = y(Q)*R_m(alpha), with y(Q') = yP/R_n(t):
    # R_m(t)/R_n(t) = R_m(alpha)/R_n(alpha), cross-multiplied
    nm, dm = dp.y_multiple_ratio(m)
    nn_, dn_ = dp.y_multiple_ratio(n)
    lhs = _lift_poly(nm, fk) * _lift_poly(dn_, fk) * _at_alpha(dm, fk, alpha) * _at_alpha(nn_, fk, alpha)
    rhs = _lift_poly(dm, fk) * _lift_poly(nn_, fk) * _at_alpha(nm, fk, alpha) * _at_alpha(dn_, fk, alpha)
    return g.gcd(lhs - rhs)


def _lift_poly(f: Poly, fk) -> Poly:
    return Poly(fk, [fk.convert(c) for c in f.coeffs])


def _at_alpha(f: Poly, fk, alpha):
    return _lift_poly(f, fk)(alpha)


def galois_difference_orders(e: Curve, p: Point, n: int) -> List[int]:
    """Multiset of exact orders of conjugate differences, all factors."""
    out = []
    for _h, ms in galois_difference_orders_by_factor(e, p, n):
        out.extend(ms)
    return sorted(out)
