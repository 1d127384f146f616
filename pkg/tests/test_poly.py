from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellprim.field import QQ, FieldError, QuadraticField
from ellprim.poly import Poly


def P(*coeffs_high_to_low):
    """Poly over Q from high-to-low integer/fraction coefficients."""
    return Poly(QQ, [Fraction(c) for c in reversed(coeffs_high_to_low)])


PRE4 = P(1, -16, 10, 48, -39)  # x^4 - 16x^3 + 10x^2 + 48x - 39


def test_divmod_examples():
    q, r = divmod(PRE4, P(1, 0, -3))
    assert q == P(1, -16, 13) and r.is_zero()
    q, r = divmod(P(1, 0, 0), P(1, 0))
    assert q == P(1, 0) and r.is_zero()
    q, r = divmod(P(1, 1), P(1, 0, 1))
    assert q.is_zero() and r == P(1, 1)
    with pytest.raises(FieldError):
        divmod(PRE4, Poly.zero(QQ))


def test_gcd_examples():
    assert PRE4.gcd(P(1, 0, -3)) == P(1, 0, -3)
    assert P(1, 0, -1).gcd(P(1, 0, 1)) == P(1)
    f = P(3, 0, -9)
    assert f.gcd(Poly.zero(QQ)) == f.monic()


def test_resultant_examples():
    assert P(1, 0, -3).resultant(P(1, -2)) == 1
    # the two cubics of the special locus: x^3+1 and (1-x)^3-2
    f = P(1, 0, 0, 1)
    g = P(-1, 3, -3, -1)
    assert f.resultant(g) != 0
    c = Fraction(7)
    assert P(1, -c).resultant(P(1, -c)) == 0
    with pytest.raises(FieldError):
        P(1, 1).resultant(Poly.zero(QQ))


def test_eval_and_compose():
    assert PRE4(Fraction(2)) == 16 - 128 + 40 + 96 - 39
    x = Poly.x(QQ)
    assert P(1, 0, -3)(x - 1) == P(1, -2, -2)


_coeffs = st.lists(
    st.fractions(min_value=-100, max_value=100, max_denominator=20),
    min_size=0,
    max_size=12,
)


def _mk(coeffs):
    return Poly(QQ, [Fraction(c) for c in coeffs])


@given(_coeffs, _coeffs)
@settings(max_examples=150)
def test_divmod_roundtrip(fc, gc):
    f, g = _mk(fc), _mk(gc)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(_coeffs, _coeffs, _coeffs)
@settings(max_examples=60)
def test_gcd_common_factor(fc, gc, hc):
    f, g, h = _mk(fc), _mk(gc), _mk(hc)
    if h.is_zero() or (f.is_zero() and g.is_zero()):
        return
    if not h.is_squarefree():
        return
    lhs = (f * h).gcd(g * h)
    rhs = h.monic() * f.gcd(g)
    assert lhs == rhs.monic() or lhs == rhs


@given(_coeffs, _coeffs)
@settings(max_examples=80)
def test_resultant_iff_common_root(fc, gc):
    f, g = _mk(fc), _mk(gc)
    if f.is_zero() or g.is_zero():
        return
    if f.degree < 1 or g.degree < 1:
        return
    assert (f.resultant(g) == 0) == (f.gcd(g).degree >= 1)


def test_quadratic_field_polys():
    k = QuadraticField(3)
    s = k.qf.sqrt_gen()
    f = Poly(k, [k.convert(-3), k.zero(), k.one()])  # x^2 - 3
    lin = Poly(k, [-s, k.one()])  # x - sqrt(3)
    q, r = divmod(f, lin)
    assert r.is_zero()
    assert q == Poly(k, [s, k.one()])
    assert f.gcd(lin) == lin
