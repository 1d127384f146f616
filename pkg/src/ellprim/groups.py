"""Finite abelian groups, the sqrt(N) large-order-element guarantee with
its constructive witness procedure, and the Fano-plane construction
showing the exponent cannot be pushed much past N^(4/7).

A group is a product of cyclic prime-power factors; factors sharing a
prime are merged into a single component (the full p-part), so that the
order of an element determines the orders of all its component
projections — the step the witness descent relies on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, isqrt, lcm
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .field import FieldError


def _is_prime_power(n: int) -> Optional[int]:
    """The prime p if n = p^e (e >= 1), else None."""
    if n < 2:
        return None
    for p in range(2, isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return n  # n itself prime


class FiniteAbelianGroup:
    """Product of cyclic groups of prime-power order.

    cyclic_orders: the flat list of cyclic factor orders, sorted so that
    factors of the same prime are adjacent; components: per prime, the
    (prime, slice of factor indices, exponent N_i) data of one G_i.
    """

    __slots__ = ("cyclic_orders", "components", "exponent")

    def __init__(self, orders: Sequence[int]):
        if not orders:
            raise FieldError("group needs at least one cyclic factor")
        by_prime: Dict[int, List[int]] = {}
        for n in orders:
            p = _is_prime_power(n)
            if p is None:
                raise FieldError("cyclic factor %d is not a prime power" % n)
            by_prime.setdefault(p, []).append(n)
        flat: List[int] = []
        comps = []
        for p in sorted(by_prime):
            part = sorted(by_prime[p], reverse=True)
            idx = tuple(range(len(flat), len(flat) + len(part)))
            flat.extend(part)
            comps.append((p, idx, max(part)))
        self.cyclic_orders = tuple(flat)
        self.components = tuple(comps)
        self.exponent = 1
        for _p, _idx, ni in comps:
            self.exponent *= ni

    @property
    def k(self) -> int:
        return len(self.components)

    def order(self) -> int:
        out = 1
        for n in self.cyclic_orders:
            out *= n
        return out

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.cyclic_orders))

    def element(self, residues: Sequence[int]) -> "GroupElement":
        if len(residues) != len(self.cyclic_orders):
            raise FieldError("residue vector length mismatch")
        return GroupElement(
            self, tuple(r % n for r, n in zip(residues, self.cyclic_orders))
        )

    def all_elements(self):
        import itertools

        for res in itertools.product(*[range(n) for n in self.cyclic_orders]):
            yield GroupElement(self, res)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAbelianGroup)
            and other.cyclic_orders == self.cyclic_orders
        )

    def __hash__(self):
        return hash(self.cyclic_orders)

    def __repr__(self):
        return "G(%s)" % " x ".join("C%d" % n for n in self.cyclic_orders)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    residues: Tuple[int, ...]

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        if other.group != self.group:
            raise FieldError("elements of different groups")
        return GroupElement(
            self.group,
            tuple(
                (a - b) % n
                for a, b, n in zip(self.residues, other.residues, self.group.cyclic_orders)
            ),
        )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.group != self.group:
            raise FieldError("elements of different groups")
        return GroupElement(
            self.group,
            tuple(
                (a + b) % n
                for a, b, n in zip(self.residues, other.residues, self.group.cyclic_orders)
            ),
        )

    def projection_order(self, comp_index: int) -> int:
        """Order of the image in component G_i."""
        _p, idx, _ni = self.group.components[comp_index]
        return lcm(
            *[
                self.group.cyclic_orders[i] // gcd(self.residues[i], self.group.cyclic_orders[i])
                for i in idx
            ]
        )

    def __repr__(self):
        return "(%s)" % ",".join(map(str, self.residues))


def element_order(g: FiniteAbelianGroup, x: GroupElement) -> int:
    if x.group != g:
        raise FieldError("element of a different group")
    return lcm(
        *[n // gcd(r, n) for r, n in zip(x.residues, g.cyclic_orders)]
    )


def check_s_conditions(g: FiniteAbelianGroup, s) -> Tuple[bool, bool]:
    """(condition 1, condition 2): lcm of orders equals the exponent; the
    order of every ordered-pair difference (including a-a) is realized
    by some element of S."""
    s = list(s)
    if not s:
        raise FieldError("S must be nonempty")
    orders = {element_order(g, x) for x in s}
    cond1 = lcm(*orders) == g.exponent
    cond2 = all(
        element_order(g, a - b) in orders for a in s for b in s
    )
    return cond1, cond2


def brute_force_max_order(g: FiniteAbelianGroup, s) -> int:
    s = list(s)
    if not s:
        raise FieldError("S must be nonempty")
    return max(element_order(g, x) for x in s)


@dataclass
class WitnessTrace:
    z_sequence: List[GroupElement]
    r_values: List[int]
    descent_steps: List[Tuple[GroupElement, int]]
    result: GroupElement


def _sort_key(x: GroupElement):
    return x.residues


def witness_big_order(
    g: FiniteAbelianGroup, s, rng: Optional[random.Random] = None
) -> WitnessTrace:
    """Constructive procedure extracting an element of S whose order is
    at least ceil(sqrt(exponent)), with a fully checkable trace.

    Phase 1 greedily builds z_1, ..., z_n, permuting the components so
    that z_j has full-order projections exactly in positions
    r_{j-1}+1 .. r_j.  Phase 2 descends from (z_n, n-1): at level j > 0
    the current x either already works at level j-1, or x - z_j does and
    condition 2 re-enters S with an element of the same order.
    """
    s = sorted(set(s), key=_sort_key)
    cond1, cond2 = check_s_conditions(g, s)
    if not (cond1 and cond2):
        raise FieldError("hypotheses of proposition not met")
    k = g.k
    perm = list(range(k))  # perm[pos] = original component index
    r_values: List[int] = []
    z_seq: List[GroupElement] = []
    r = 0
    while r < k:
        candidates = s if rng is None else rng.sample(s, len(s))
        chosen = None
        for z in candidates:
            fresh = [
                pos
                for pos in range(r, k)
                if z.projection_order(perm[pos]) == g.components[perm[pos]][2]
            ]
            if fresh:
                chosen = (z, fresh)
                if rng is None:
                    break  # lexicographically least (s is sorted)
                break
        if chosen is None:
            raise FieldError("condition 1 violated during construction")
        z, fresh = chosen
        # permute the fresh components into positions r .. r+len(fresh)-1
        rest = [pos for pos in range(r, k) if pos not in fresh]
        perm[r:] = [perm[pos] for pos in fresh] + [perm[pos] for pos in rest]
        r += len(fresh)
        z_seq.append(z)
        r_values.append(r)

    n = len(z_seq)

    def in_s_prime(x: GroupElement, j: int) -> bool:
        # positions r_j .. k-1 (0-based; r_0 = 0)
        start = r_values[j - 1] if j > 0 else 0
        prod = 1
        total = 1
        for pos in range(start, k):
            ci = perm[pos]
            ni = g.components[ci][2]
            total *= ni
            if x.projection_order(ci) == ni:
                prod *= ni
        return prod * prod >= total

    x, j = z_seq[-1], n - 1
    assert in_s_prime(x, j), "trace seed (z_n, n-1) must satisfy the S' condition"
    descent: List[Tuple[GroupElement, int]] = []
    while j > 0:
        if in_s_prime(x, j - 1):
            j -= 1
            descent.append((x, j))
            continue
        diff = x - z_seq[j - 1]  # z_j of the proof (1-based)
        target = element_order(g, diff)
        y = None
        for cand in s:
            if element_order(g, cand) == target:
                y = cand
                break
        assert y is not None, "condition 2 failed during descent"
        assert in_s_prime(y, j - 1), "descent invariant violated"
        x, j = y, j - 1
        descent.append((x, j))
    result_order = element_order(g, x)
    need = isqrt(g.exponent)
    if need * need < g.exponent:
        need += 1
    assert result_order >= need, "result order below ceil(sqrt(N))"
    return WitnessTrace(z_sequence=z_seq, r_values=r_values, descent_steps=descent, result=x)


# ---------------------------------------------------------------------------
# Fano plane construction.
# ---------------------------------------------------------------------------

FANO_LINES = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 6, 7),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 5, 6),
)


def fano_construction(primes: Sequence[int]):
    """(group, S): C_{p1} x ... x C_{p7} with one element per Fano line
    (residue 0 on the line's points, 1 off it), plus the zero element.

    Zero is adjoined so that condition 2 holds for the a = b pairs."""
    primes = list(primes)
    if len(primes) != 7 or len(set(primes)) != 7:
        raise FieldError("need 7 distinct primes")
    for p in primes:
        if _is_prime_power(p) != p:
            raise FieldError("%d is not prime" % p)
    g = FiniteAbelianGroup(primes)
    # the constructor sorts factors; map original position -> flat index
    order_index = sorted(range(7), key=lambda i: primes[i])
    pos_of = {orig: flat for flat, orig in enumerate(order_index)}
    s = [g.zero()]
    for line in FANO_LINES:
        res = [1] * 7
        for pt in line:
            res[pos_of[pt - 1]] = 0
        s.append(g.element(res))
    return g, s


def fano_line_element(g: FiniteAbelianGroup, s, line_index: int) -> GroupElement:
    """The S member for FANO_LINES[line_index] (skipping the zero)."""
    return s[1 + line_index]
