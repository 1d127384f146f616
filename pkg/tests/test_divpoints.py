from fractions import Fraction
from math import lcm

import pytest

from ellprim.curve import Curve, scalar_mul
from ellprim.divpoints import (
    galois_difference_orders,
    galois_difference_orders_by_factor,
    is_primitive,
    is_x_primitive,
    preimage_field_degrees,
    preimage_polynomial,
)
from ellprim.field import QQ, FieldError, QuadraticField
from ellprim.poly import Poly
from ellprim.torsion import c_e_constant

E54 = Curve(Fraction(-5), Fraction(4))
E1 = Curve(Fraction(0), Fraction(1))


def _quad_point_4():
    k = QuadraticField(3)
    e = E54.base_change(k)
    return e, e.point(k.convert(4), k.qf.elem(0, 4))  # (4, 4*sqrt3)


def test_preimage_polynomial_oracles():
    p4 = preimage_polynomial(E54, Fraction(4), 2)
    assert p4 == Poly(QQ, [Fraction(c) for c in (-39, 48, 10, -16, 1)])
    p0 = preimage_polynomial(E54, Fraction(0), 2)
    assert p0 == Poly(QQ, [Fraction(c) for c in (25, -32, 10, 0, 1)])
    assert preimage_polynomial(E54, Fraction(4), 1) == Poly(
        QQ, [Fraction(-4), Fraction(1)]
    )


def test_preimage_polynomial_degree_and_roots():
    for n in range(1, 5):
        f = preimage_polynomial(E54, Fraction(4), n)
        assert f.degree == n * n
        assert f.lc() == Fraction(1)
    # x = sqrt(3) doubles to x = 4, so it is a root of the N=2 polynomial
    k = QuadraticField(3)
    f = preimage_polynomial(E54, Fraction(4), 2).map_field(k)
    assert not f(k.qf.sqrt_gen())


def test_preimage_polynomial_errors():
    with pytest.raises(FieldError):
        preimage_polynomial(E54, Fraction(4), 0)


def test_preimage_degrees_quadratic_point():
    _e, p = _quad_point_4()
    rep = preimage_field_degrees(E54, p, 2)
    assert rep.degrees_over_base == [1, 1, 2]
    assert rep.degrees_over_q == [2, 2]
    assert all(y_splits for _h, y_splits in rep.factors)
    assert sum(h.degree for h, _ys in rep.factors) == 4


def test_preimage_degrees_rational_point():
    rep = preimage_field_degrees(E54, E54.point(Fraction(0), Fraction(2)), 2)
    assert rep.degrees_over_base == [4]
    assert rep.degrees_over_q == [4]
    # (0,1) on y^2 = x^3 + 1 has the rational halving (2,3)
    rep = preimage_field_degrees(E1, E1.point(Fraction(0), Fraction(1)), 2)
    assert rep.degrees_over_base == [1, 1, 2]
    assert 1 in rep.degrees_over_q


def test_preimage_degrees_trivial_and_errors():
    rep = preimage_field_degrees(E54, E54.point(Fraction(0), Fraction(2)), 1)
    assert rep.degrees_over_base == [1]
    assert rep.degrees_over_q == [1]
    with pytest.raises(FieldError):
        preimage_field_degrees(E54, E54.point(Fraction(0), Fraction(2)), 9)
    with pytest.raises(FieldError):
        preimage_field_degrees(E54, E54.infinity(), 2)


def test_x_primitive_true_case():
    v = is_x_primitive(E54, E54.point(Fraction(0), Fraction(2)))
    assert v.verdict is True
    assert v.witness is None


def test_x_primitive_torsion_mode():
    p = E1.point(Fraction(0), Fraction(1))
    with pytest.raises(FieldError):
        is_x_primitive(E1, p)
    v = is_x_primitive(E1, p, torsion_mode=True)
    assert v.verdict is False
    n, q = v.witness
    assert n == 2
    assert scalar_mul(n, q) == q.curve.point(q.curve.field.convert(0),
                                             q.curve.field.convert(1))


def test_is_primitive_with_witness():
    q = E54.point(Fraction(0), Fraction(2))
    p = scalar_mul(2, q)
    assert (p.x, p.y) == (Fraction(25, 16), Fraction(-3, 64))
    v = is_primitive(E54, p)
    assert v.verdict is False
    n, w = v.witness
    assert n == 2
    assert scalar_mul(n, w) == p


def test_quadratic_point_not_primitive():
    _e, p = _quad_point_4()
    v = is_primitive(E54, p)
    assert v.verdict is False
    n, w = v.witness
    assert n == 2
    assert scalar_mul(n, w) == p


def test_primitivity_errors():
    with pytest.raises(FieldError):
        is_primitive(E54, E54.infinity())
    with pytest.raises(FieldError):
        is_primitive(E1, E1.point(Fraction(2), Fraction(3)))


def test_galois_difference_orders_oracle():
    p = E54.point(Fraction(0), Fraction(2))
    assert galois_difference_orders(E54, p, 2) == [1, 2, 2, 2]
    # every conjugate difference has order dividing N, with the identity
    # conjugate contributing a 1 for each factor
    for n in (2, 3):
        orders = galois_difference_orders(E54, p, n)
        assert all(n % m == 0 for m in orders)
        assert orders.count(1) >= 1
        assert lcm(*orders) == n


def test_galois_difference_orders_linear_factor():
    _e, p = _quad_point_4()
    by_factor = galois_difference_orders_by_factor(E54, p, 2)
    linear = [ms for h, ms in by_factor if h.degree == 1]
    assert linear and all(ms == [1] for ms in linear)
    ratio = 2 // lcm(*galois_difference_orders(E54, p, 2))
    assert c_e_constant(E54) % ratio == 0


def test_galois_difference_orders_errors():
    p = E54.point(Fraction(0), Fraction(2))
    with pytest.raises(FieldError):
        galois_difference_orders(E54, p, 5)
    with pytest.raises(FieldError):
        galois_difference_orders(E54, E54.infinity(), 2)
