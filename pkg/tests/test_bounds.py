import math

import pytest

from ellprim.bounds import (
    BoundParams,
    chain_check,
    intersection_threshold,
    intersection_threshold_mp,
    masser_lower_bound,
    masser_lower_bound_mp,
    primitive_degree_bound,
    primitive_degree_bound_mp,
)
from ellprim.field import FieldError

E2 = math.e ** 2


def test_masser_formula_values():
    p = BoundParams()
    assert math.isclose(masser_lower_bound(p, E2), E2 / 2, rel_tol=1e-12)
    p2 = BoundParams(g=2, c_prime=2.0)
    assert math.isclose(masser_lower_bound(p2, E2), math.e, rel_tol=1e-12)


def test_masser_monotone_past_e_to_g():
    for g in (1, 2, 3):
        p = BoundParams(g=g)
        start = math.ceil(math.e ** g) + 1
        vals = [masser_lower_bound(p, n) for n in range(start, start + 200)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


def test_primitive_degree_formula_values():
    p = BoundParams()
    assert math.isclose(
        primitive_degree_bound(p, 1, E2), math.sqrt(math.e) / math.sqrt(2),
        rel_tol=1e-12,
    )
    # sqrt(d) scaling: quadrupling d doubles the bound
    for d in (1, 2, 5):
        assert math.isclose(
            primitive_degree_bound(p, 4 * d, 100),
            2 * primitive_degree_bound(p, d, 100),
            rel_tol=1e-12,
        )


def test_primitive_degree_consistency_identity():
    # with c = sqrt(2 c'), bound^2 * log N = 2 c' * d * N^(1/2g)
    for g in (1, 2):
        for c_prime in (1.0, 3.5):
            p = BoundParams(g=g, c=math.sqrt(2 * c_prime), c_prime=c_prime)
            for d in (1, 2, 7):
                for n in (2, 10, 1000):
                    lhs = primitive_degree_bound(p, d, n) ** 2 * math.log(n)
                    rhs = 2 * c_prime * d * n ** (1 / (2 * g))
                    assert math.isclose(lhs, rhs, rel_tol=1e-12)


def test_intersection_threshold_values():
    p = BoundParams()
    assert math.isclose(intersection_threshold(p, math.e), E2, rel_tol=1e-12)
    vals = [intersection_threshold(p, d) for d in range(2, 40)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_chain_check_above_threshold():
    p = BoundParams(L=50.0)
    for d in range(2, 7):
        n0 = math.ceil(intersection_threshold(p, d)) + 1
        for n in (n0, 2 * n0, 10 * n0):
            assert chain_check(p, d, n)


def test_float_matches_high_precision():
    p = BoundParams(g=1, c=1.25, c_prime=0.75, L=2.5)
    for i in range(100):
        n = 2 + 7 * i
        d = 2 + i
        assert math.isclose(
            masser_lower_bound(p, n), float(masser_lower_bound_mp(p, n)),
            rel_tol=1e-12,
        )
        assert math.isclose(
            primitive_degree_bound(p, d, n),
            float(primitive_degree_bound_mp(p, d, n)),
            rel_tol=1e-12,
        )
        assert math.isclose(
            intersection_threshold(p, d),
            float(intersection_threshold_mp(p, d)),
            rel_tol=1e-12,
        )


def test_error_contracts():
    p = BoundParams()
    with pytest.raises(FieldError):
        masser_lower_bound(p, 1)
    with pytest.raises(FieldError):
        primitive_degree_bound(p, 0, 10)
    with pytest.raises(FieldError):
        primitive_degree_bound(p, 2, 1)
    with pytest.raises(FieldError):
        intersection_threshold(p, 1)
    with pytest.raises(FieldError):
        chain_check(p, 1, 10)
    with pytest.raises(FieldError):
        BoundParams(g=0)
    with pytest.raises(FieldError):
        BoundParams(c=-1.0)
