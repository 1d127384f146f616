"""Closed-form evaluators for the effective bounds: the degree lower
bound for division points, the primitive-point degree bound, and the
intersection threshold with its inequality chain.

The effective constants are inputs (defaults of 1 are placeholders);
the evaluators only reproduce the shapes of the bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .field import FieldError


@dataclass(frozen=True)
class BoundParams:
    g: int = 1
    c: float = 1.0
    c_prime: float = 1.0
    L: float = 1.0
    L_prime: float = 1.0
    L_dprime: float = 1.0
    e: float = 1.0

    def __post_init__(self):
        if self.g < 1 or int(self.g) != self.g:
            raise FieldError("g must be a positive integer")
        for name in ("c", "c_prime", "L", "L_prime", "L_dprime", "e"):
            if getattr(self, name) <= 0:
                raise FieldError("%s must be positive" % name)


def masser_lower_bound(p: BoundParams, n: int) -> float:
    """c' * N^(1/g) / log N, the division-point degree lower bound."""
    if n < 2:
        raise FieldError("N must be at least 2")
    return p.c_prime * n ** (1.0 / p.g) / math.log(n)


def primitive_degree_bound(p: BoundParams, d: int, n: int) -> float:
    """c * sqrt(d) * N^(1/4g) / sqrt(log N)."""
    if d < 1:
        raise FieldError("d must be a positive integer")
    if n < 2:
        raise FieldError("N must be at least 2")
    return p.c * math.sqrt(d) * n ** (1.0 / (4 * p.g)) / math.sqrt(math.log(n))


def intersection_threshold(p: BoundParams, d: int) -> float:
    """L * d^(2g) * (log d)^(2g); orders N above it are 'large' for
    degree-d fields."""
    if d < 2:
        raise FieldError("d must be at least 2")
    return p.L * d ** (2 * p.g) * math.log(d) ** (2 * p.g)


def chain_check(p: BoundParams, d: int, n: int) -> bool:
    """For N above the intersection threshold the chain
    N^(1/2g)/log N > (L'')^2 * d should hold; evaluates it directly."""
    if d < 2:
        raise FieldError("d must be at least 2")
    if n < 2:
        raise FieldError("N must be at least 2")
    return n ** (1.0 / (2 * p.g)) / math.log(n) > p.L_dprime**2 * d


def _mp(x) -> mpmath.mpf:
    return mpmath.mpf(repr(float(x)))


def masser_lower_bound_mp(p: BoundParams, n: int, dps: int = 30):
    """Arbitrary-precision re-evaluation, for cross-checking the float
    path."""
    if n < 2:
        raise FieldError("N must be at least 2")
    with mpmath.workdps(dps):
        return _mp(p.c_prime) * mpmath.mpf(n) ** (mpmath.mpf(1) / p.g) / mpmath.log(n)


def primitive_degree_bound_mp(p: BoundParams, d: int, n: int, dps: int = 30):
    if d < 1:
        raise FieldError("d must be a positive integer")
    if n < 2:
        raise FieldError("N must be at least 2")
    with mpmath.workdps(dps):
        return (
            _mp(p.c)
            * mpmath.sqrt(d)
            * mpmath.mpf(n) ** (mpmath.mpf(1) / (4 * p.g))
            / mpmath.sqrt(mpmath.log(n))
        )


def intersection_threshold_mp(p: BoundParams, d: int, dps: int = 30):
    if d < 2:
        raise FieldError("d must be at least 2")
    with mpmath.workdps(dps):
        return _mp(p.L) * mpmath.mpf(d) ** (2 * p.g) * mpmath.log(d) ** (2 * p.g)
