from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellprim.field import (
    QQ,
    FieldError,
    QuadElem,
    QuadField,
    QuadraticField,
    is_squarefree,
    rational_normalize,
    rational_sqrt,
)


def test_rational_normalize():
    assert rational_normalize(6, -4) == Fraction(-3, 2)
    assert rational_normalize(0, 7) == Fraction(0)
    assert rational_normalize(25, 16) == Fraction(25, 16)
    with pytest.raises((FieldError, ZeroDivisionError)):
        rational_normalize(1, 0)


def test_quad_inverse_examples():
    k = QuadField(3)
    z = k.elem(1, -1)  # 1 - sqrt(3)
    assert z.inverse() == k.elem(Fraction(-1, 2), Fraction(-1, 2))
    assert z * z.inverse() == k.elem(1, 0)
    assert k.elem(2, 0).inverse() == k.elem(Fraction(1, 2), 0)
    assert k.elem(0, 1).inverse() == k.elem(0, Fraction(1, 3))
    with pytest.raises(FieldError):
        k.elem(0, 0).inverse()


def test_quadelem_normalization_contract():
    k = QuadField(3)
    z = k.elem(4, 0)
    assert isinstance(z, QuadElem)
    assert z.is_rational()
    assert z.to_rational() == 4
    with pytest.raises(FieldError):
        k.elem(0, 1).to_rational()


def test_squarefree_checks():
    assert is_squarefree(3)
    assert is_squarefree(-3)
    assert not is_squarefree(12)
    with pytest.raises(FieldError):
        QuadField(12)
    with pytest.raises(FieldError):
        QuadField(1)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(25, 16)) == Fraction(5, 4)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_quad_sqrt():
    k = QuadField(3)
    # sqrt(4 + 2*sqrt(3)) = 1 + sqrt(3)
    r = k.elem(4, 2).sqrt()
    assert r is not None and r * r == k.elem(4, 2)
    assert r in (k.elem(1, 1), k.elem(-1, -1))
    assert k.elem(0, 1).sqrt() is None  # sqrt(sqrt(3)) is degree 4


_rats = st.fractions(
    min_value=-(10**6), max_value=10**6, max_denominator=10**4
)


@st.composite
def _quads(draw, d=3):
    k = QuadField(d)
    return k.elem(draw(_rats), draw(_rats))


@given(_quads(), _quads(), _quads())
@settings(max_examples=200)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a != a.field.elem(0, 0):
        assert a * a.inverse() == a.field.elem(1, 0)
    assert a.norm() == Fraction(a.u * a.u - a.field.d * a.v * a.v)
    assert a.conjugate() + a == a.field.elem(a.trace(), 0)


def test_field_descriptors():
    k3 = QuadraticField(3)
    assert k3.convert(Fraction(1, 2)) == k3.qf.elem(Fraction(1, 2), 0)
    assert QQ.convert(5) == Fraction(5)
    assert k3 == QuadraticField(3)
    assert k3 != QuadraticField(5)
    assert QuadraticField(-3).d == -3
