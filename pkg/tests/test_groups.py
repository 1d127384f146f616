import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellprim.field import FieldError
from ellprim.groups import (
    FANO_LINES,
    FiniteAbelianGroup,
    brute_force_max_order,
    check_s_conditions,
    element_order,
    fano_construction,
    witness_big_order,
)


def _ceil_sqrt(n):
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def test_group_construction():
    g = FiniteAbelianGroup([4, 2, 9])
    assert g.exponent == 36
    assert g.order() == 72
    assert g.k == 2  # the 2-part {4,2} merged, the 3-part {9}
    with pytest.raises(FieldError):
        FiniteAbelianGroup([6])  # not a prime power
    with pytest.raises(FieldError):
        FiniteAbelianGroup([])


def test_element_order():
    g = FiniteAbelianGroup([4, 3])
    assert element_order(g, g.zero()) == 1
    assert element_order(g, g.element([1, 1])) == 12
    assert element_order(g, g.element([2, 0])) == 2


def test_check_s_conditions():
    g = FiniteAbelianGroup([4, 3])
    full = list(g.all_elements())
    assert check_s_conditions(g, full) == (True, True)
    # S without a full-order element fails condition 1
    s = [g.zero(), g.element([2, 0])]
    c1, c2 = check_s_conditions(g, s)
    assert not c1
    # missing difference order fails condition 2
    s = [g.element([1, 1]), g.element([0, 1])]
    c1, c2 = check_s_conditions(g, s)
    assert not c2  # difference (1,0) has order 4, not represented


def test_witness_requires_hypotheses():
    g = FiniteAbelianGroup([4, 3])
    with pytest.raises(FieldError):
        witness_big_order(g, [g.zero()])


def test_witness_trace_structure():
    g, s = fano_construction([2, 3, 5, 7, 11, 13, 17])
    tr = witness_big_order(g, s)
    assert tr.r_values[-1] == g.k
    assert all(b > a for a, b in zip(tr.r_values, tr.r_values[1:]))
    assert len(tr.z_sequence) == len(tr.r_values)
    assert element_order(g, tr.result) >= _ceil_sqrt(g.exponent)
    # descent steps decrease j by one each time
    js = [j for _x, j in tr.descent_steps]
    assert js == list(range(len(tr.z_sequence) - 2, -1, -1)) or js == []
    # regression pin for the deterministic tie-break
    assert element_order(g, tr.result) == 1870
    assert tr.r_values == [4, 6, 7]


def test_fano_oracle():
    g, s = fano_construction([2, 3, 5, 7, 11, 13, 17])
    assert g.exponent == 510510
    assert check_s_conditions(g, s) == (True, True)
    assert brute_force_max_order(g, s) == 17017
    assert 17017 >= _ceil_sqrt(510510) == 715
    with pytest.raises(FieldError):
        fano_construction([2, 3, 5, 7, 11, 13])
    with pytest.raises(FieldError):
        fano_construction([2, 3, 5, 7, 11, 13, 15])


def test_fano_large_primes_ratio():
    def isprime(n):
        return n > 1 and all(n % q for q in range(2, math.isqrt(n) + 1))

    ps = [p for p in range(10**6, 10**6 + 201) if isprime(p)][:7]
    assert len(ps) == 7
    g, s = fano_construction(ps)
    mx = brute_force_max_order(g, s)
    assert abs(math.log(mx) - Fraction_free_log_ratio(g)) < 0.01


def Fraction_free_log_ratio(g):
    return (4 / 7) * math.log(g.exponent)


def test_fano_line_difference_structure():
    # difference of two line elements is supported exactly off the
    # symmetric difference complement: order = product of primes where
    # the two lines disagree
    g, s = fano_construction([2, 3, 5, 7, 11, 13, 17])
    for i in range(1, 8):
        for j in range(i + 1, 8):
            diff = s[i] - s[j]
            o = element_order(g, diff)
            # two distinct Fano lines meet in exactly one point:
            # residues agree on 1 + (7 - 2*3 + 1) positions
            disagree = sum(
                1 for a, b in zip(s[i].residues, s[j].residues) if a != b
            )
            assert disagree == 4
            assert o == math.prod(
                n
                for a, b, n in zip(s[i].residues, s[j].residues, g.cyclic_orders)
                if a != b
            )


def test_randomized_witness_mode():
    g, s = fano_construction([2, 3, 5, 7, 11, 13, 17])
    rng = random.Random(99)
    for _ in range(5):
        tr = witness_big_order(g, s, rng=rng)
        assert element_order(g, tr.result) >= _ceil_sqrt(g.exponent)


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_random_subgroup_instances(seed):
    rng = random.Random(seed)
    primes = rng.sample([2, 3, 5, 7], rng.randint(1, 2))
    orders = [p ** rng.randint(1, 2) if p < 5 else p for p in primes]
    g = FiniteAbelianGroup(orders)  # exponent <= 63, so |S| stays small
    # a full-order cyclic subgroup satisfies both conditions
    gen = g.element(
        [rng.choice([r for r in range(1, n) if math.gcd(r, n) == 1]) if n > 1 else 0
         for n in g.cyclic_orders]
    )
    n_ord = element_order(g, gen)
    s = [g.element([k * r % n for r, n in zip(gen.residues, g.cyclic_orders)])
         for k in range(n_ord)]
    assert check_s_conditions(g, s) == (True, True)
    tr = witness_big_order(g, s)
    assert element_order(g, tr.result) >= _ceil_sqrt(g.exponent)
