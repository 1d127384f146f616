from fractions import Fraction

import pytest

from ellprim.field import QQ, FieldError, QuadraticField
from ellprim.poly import Poly
from ellprim.quotient import (
    QuotientRing,
    ZeroDivisorFound,
    algebra_norm,
    is_square_in_quotient,
    quotient_field,
    sqrt_in_quotient,
)


def P(*coeffs_high_to_low):
    return Poly(QQ, [Fraction(c) for c in reversed(coeffs_high_to_low)])


def test_basic_arithmetic_and_inverse():
    ring = QuotientRing(QQ, P(1, 0, -3))  # Q[x]/(x^2-3)
    a = ring.gen()
    assert a * a == ring.convert(3)
    inv = (a + 1).inverse()
    assert inv * (a + 1) == ring.one()


def test_zero_divisor_detection():
    ring = QuotientRing(QQ, P(1, 0, -1))  # Q[x]/(x^2-1), reducible
    a = ring.gen() - ring.one()
    with pytest.raises(ZeroDivisorFound) as exc:
        a.inverse()
    factor = exc.value.factor
    assert 0 < factor.degree < 2
    assert P(1, 0, -1) % factor == Poly.zero(QQ)


def test_sqrt_3_in_quadratic_quotient():
    ring = QuotientRing(QQ, P(1, 0, -3))
    r = sqrt_in_quotient(ring.convert(3))
    assert r is not None and r * r == ring.convert(3)
    assert r in (ring.gen(), -ring.gen())
    assert sqrt_in_quotient(ring.convert(2)) is None


def test_sqrt_2_in_eighth_cyclotomic():
    # Q[u]/(u^4+1): sqrt(2) = u - u^3
    ring = QuotientRing(QQ, P(1, 0, 0, 0, 1))
    r = sqrt_in_quotient(ring.convert(2))
    assert r is not None and r * r == ring.convert(2)
    u = ring.gen()
    assert r in (u - u**3, u**3 - u)
    assert is_square_in_quotient(ring.convert(2))


def test_sqrt_6_in_biquadratic_tower():
    # Q(sqrt(2))[z]/(z^2-3): sqrt(6) = sqrt(2)*z
    k = QuadraticField(2)
    mod = Poly(k, [k.convert(-3), k.zero(), k.one()])
    ring = QuotientRing(k, mod)
    r = sqrt_in_quotient(ring.convert(6))
    assert r is not None and r * r == ring.convert(6)


def test_sqrt_of_quad_elem_in_quotient():
    k = QuadraticField(3)
    # (1+sqrt(3))^2 = 4+2sqrt(3) already in the base field, trivial modulus
    mod = Poly(k, [k.convert(-5), k.one()])
    ring = QuotientRing(k, mod)
    val = ring.convert(k.qf.elem(4, 2))
    r = sqrt_in_quotient(val)
    assert r is not None and r * r == val


def test_minimal_polynomial_and_norm():
    ring = QuotientRing(QQ, P(1, 0, -3))
    a = ring.gen() + 1  # 1 + sqrt(3), min poly x^2 - 2x - 2
    mp = a.minimal_polynomial()
    assert mp == P(1, -2, -2)
    n = algebra_norm([a])  # constant in z: Norm(1 + sqrt(3)) = -2
    assert n == Poly(QQ, [Fraction(-2)])
    # z - a: norm is the characteristic polynomial x^2 - 2x - 2 in z
    cp = algebra_norm([-a, ring.one()])
    assert cp.monic() == P(1, -2, -2)


def test_quotient_field_wrapper_polys():
    ring = QuotientRing(QQ, P(1, 0, -3))
    fk = quotient_field(ring)
    x = Poly.x(fk)
    alpha = fk.convert(ring.gen())
    f = (x - alpha) * (x + alpha)  # x^2 - 3 over the quotient field
    assert f(alpha) == fk.convert(0)
    g = f.gcd(x - alpha)
    assert g.degree == 1
