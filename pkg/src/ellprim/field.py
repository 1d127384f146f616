"""Exact arithmetic over Q and quadratic fields Q(sqrt(d)).

Rationals are plain ``fractions.Fraction`` (already canonical: reduced,
positive denominator).  Quadratic field elements are u + v*sqrt(d) with
u, v rational and d squarefree, d not in {0, 1}.  Elements of different
quadratic fields never mix silently; embedding a rational into a field
is explicit via ``QuadField.embed``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Fraction


class FieldError(ValueError):
    """Raised on field mismatches, zero division and bad constructions."""


def rational_normalize(n: int, m: int) -> Fraction:
    """Canonical reduced fraction n/m with positive denominator."""
    if m == 0:
        raise FieldError("division by zero")
    return Fraction(n, m)


def _squarefree_part(n: int) -> int:
    """Largest squarefree divisor of n (sign preserved), by trial division."""
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e % 2:
                out *= p
        p += 1 if p == 2 else 2
    return sign * out * n


def is_squarefree(n: int) -> bool:
    return n != 0 and _squarefree_part(n) == n


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None if q is not a square."""
    if q < 0:
        return None
    import gmpy2

    num, den = q.numerator, q.denominator
    rn = gmpy2.isqrt(num)
    rd = gmpy2.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(int(rn), int(rd))
    return None


class QuadField:
    """The field Q(sqrt(d)) for a squarefree integer d, d not in {0, 1}."""

    __slots__ = ("d",)

    def __init__(self, d: int):
        if d in (0, 1):
            raise FieldError(f"radicand {d} does not define a quadratic field")
        if not is_squarefree(d):
            raise FieldError(f"radicand {d} is not squarefree")
        self.d = d

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadField) and other.d == self.d

    def __hash__(self) -> int:
        return hash(("QuadField", self.d))

    def __repr__(self) -> str:
        return f"QQ(sqrt({self.d}))"

    def embed(self, q) -> "QuadElem":
        """Explicitly embed a rational (or int) into this field."""
        return QuadElem(self, Fraction(q), Fraction(0))

    def sqrt_gen(self) -> "QuadElem":
        """The generator sqrt(d)."""
        return QuadElem(self, Fraction(0), Fraction(1))

    def elem(self, u, v) -> "QuadElem":
        return QuadElem(self, Fraction(u), Fraction(v))


class QuadElem:
    """u + v*sqrt(d), exact.  Immutable."""

    __slots__ = ("field", "u", "v")

    def __init__(self, field: QuadField, u: Fraction, v: Fraction):
        self.field = field
        self.u = Fraction(u)
        self.v = Fraction(v)

    # -- helpers -------------------------------------------------------

    def _coerce(self, other) -> "QuadElem | None":
        if isinstance(other, QuadElem):
            if other.field != self.field:
                raise FieldError(
                    f"mixed quadratic fields {self.field} and {other.field}; "
                    "embed explicitly"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.embed(other)
        return None

    def is_rational(self) -> bool:
        return self.v == 0

    def to_rational(self) -> Fraction:
        """Explicit coercion to Q; only legal when v = 0."""
        if self.v != 0:
            raise FieldError(f"{self} is not rational")
        return self.u

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.field, self.u, -self.v)

    def norm(self) -> Fraction:
        """Field norm u^2 - d*v^2 (in Q)."""
        return self.u * self.u - self.field.d * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.field, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.field, -self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.field, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.field.d
        return QuadElem(
            self.field,
            self.u * o.u + d * self.v * o.v,
            self.u * o.v + self.v * o.u,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        """Multiplicative inverse via the conjugate: (u - v*sqrt(d)) / (u^2 - d v^2)."""
        n = self.norm()
        if self.u == 0 and self.v == 0:
            raise FieldError("division by zero")
        # d squarefree and nonzero element => norm nonzero
        assert n != 0, "vanishing norm of a nonzero quadratic element"
        return QuadElem(self.field, self.u / n, -self.v / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.embed(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.v == 0 and self.u == other
        if isinstance(other, QuadElem):
            return (
                self.field == other.field and self.u == other.u and self.v == other.v
            )
        return NotImplemented

    def __hash__(self) -> int:
        if self.v == 0:
            return hash(self.u)
        return hash((self.field.d, self.u, self.v))

    def __bool__(self) -> bool:
        return self.u != 0 or self.v != 0

    def __repr__(self) -> str:
        d = self.field.d
        if self.v == 0:
            return f"{self.u}+0*sqrt({d})"
        return f"{self.u}{'+' if self.v >= 0 else '-'}{abs(self.v)}*sqrt({d})"

    def sqrt(self) -> "QuadElem | None":
        """A square root in the same field, or None.

        (p + q*sqrt(d))^2 = u + v*sqrt(d) forces p^2 to be a root of
        t^2 - u t + d v^2 / 4, so p^2 = (u +- sqrt(norm)) / 2 must be a
        rational square.
        """
        n = rational_sqrt(self.norm())
        if n is None:
            return None
        if self.v == 0:
            r = rational_sqrt(self.u)
            if r is not None:
                return self.field.embed(r)
            r = rational_sqrt(self.u / self.field.d)
            if r is not None:
                return QuadElem(self.field, Fraction(0), r)
            return None
        for sign in (1, -1):
            p2 = (self.u + sign * n) / 2
            p = rational_sqrt(p2)
            if p is not None and p != 0:
                q = self.v / (2 * p)
                cand = QuadElem(self.field, p, q)
                if cand * cand == self:
                    return cand
        return None


FieldElem = Union[Fraction, QuadElem]


def quad_inverse(z: QuadElem) -> QuadElem:
    return z.inverse()


# ---------------------------------------------------------------------------
# Coefficient field descriptors used by Poly and the factorization code.
# ---------------------------------------------------------------------------


class RationalField:
    """The field Q; elements are Fraction."""

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def convert(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, QuadElem):
            return x.to_rational()
        raise FieldError(f"cannot convert {x!r} to QQ")


class QuadraticField:
    """Coefficient-field descriptor for Q(sqrt(d)); elements are QuadElem."""

    def __init__(self, d: int):
        self.qf = QuadField(d) if not isinstance(d, QuadField) else d

    @property
    def d(self):
        return self.qf.d

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.qf == self.qf

    def __hash__(self):
        return hash(("QuadraticField", self.qf.d))

    def __repr__(self):
        return repr(self.qf)

    def zero(self):
        return self.qf.embed(0)

    def one(self):
        return self.qf.embed(1)

    def convert(self, x):
        if isinstance(x, (int, Fraction)):
            return self.qf.embed(x)
        if isinstance(x, QuadElem):
            if x.field != self.qf:
                raise FieldError(f"cannot convert {x!r} into {self.qf}")
            return x
        raise FieldError(f"cannot convert {x!r} into {self.qf}")


QQ = RationalField()
