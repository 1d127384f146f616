"""Dense univariate polynomials over a declared coefficient field.

Coefficients are stored low-to-high; the zero polynomial has an empty
coefficient list.  The coefficient field is one of the descriptors from
``ellprim.field`` (QQ, QuadraticField(d)) or a ``QuotientField`` from
``ellprim.quotient``.  All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, List

from .field import QQ, FieldError, QuadElem, RationalField


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs: Iterable):
        cs = [field.convert(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = cs

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Poly":
        return cls(field, [])

    @classmethod
    def one(cls, field) -> "Poly":
        return cls(field, [1])

    @classmethod
    def x(cls, field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field, c) -> "Poly":
        return cls(field, [c])

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self):
        if not self.coeffs:
            raise FieldError("leading coefficient of zero polynomial")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"({c})*x")
            else:
                terms.append(f"({c})*x^{i}")
        return " + ".join(reversed(terms))

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise FieldError(
                f"coefficient field mismatch: {self.field} vs {other.field}"
            )

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.field.convert(other))
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.field.convert(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field.convert(other)
            return Poly(self.field, [a * c for a in self.coeffs])
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise FieldError("negative polynomial power")
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly"):
        """Exact quotient and remainder: self = q*other + r, deg r < deg other."""
        if not isinstance(other, Poly):
            other = Poly.constant(self.field, self.field.convert(other))
        self._check(other)
        if other.is_zero():
            raise FieldError("polynomial division by zero")
        q = [self.field.zero()] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        inv_lc = self.field.one() / other.lc()
        dg = other.degree
        while len(r) - 1 >= dg and any(bool(c) for c in r):
            while r and not r[-1]:
                r.pop()
            if len(r) - 1 < dg:
                break
            k = len(r) - 1 - dg
            factor = r[-1] * inv_lc
            q[k] = factor
            for i, c in enumerate(other.coeffs):
                r[k + i] = r[k + i] - factor * c
            r.pop()
        return Poly(self.field, q), Poly(self.field, r)

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise FieldError("inexact polynomial division")
        return q

    # -- calculus and evaluation -------------------------------------------

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; x may be a field element or a Poly (composition)."""
        if isinstance(x, Poly):
            out = Poly.zero(self.field)
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.field.one() / self.lc()
        return self * inv

    def map_field(self, field, elem_map=None) -> "Poly":
        """Re-coefficient into another field, optionally via an element map."""
        if elem_map is None:
            elem_map = field.convert
        return Poly(field, [elem_map(c) for c in self.coeffs])

    # -- gcd / resultant ----------------------------------------------------

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd.  Subresultant PRS over Q, plain Euclid elsewhere."""
        self._check(other)
        a, b = self, other
        if a.is_zero() and b.is_zero():
            raise FieldError("gcd of two zero polynomials")
        if isinstance(self.field, RationalField):
            return _gcd_rational(a, b)
        while not b.is_zero():
            a, b = b, (a % b)
        return a.monic()

    def ext_gcd(self, other: "Poly"):
        """(g, s, t) with s*self + t*other = g, g monic (or zero)."""
        self._check(other)
        f = self.field
        r0, r1 = self, other
        s0, s1 = Poly.one(f), Poly.zero(f)
        t0, t1 = Poly.zero(f), Poly.one(f)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        inv = f.one() / r0.lc()
        return r0 * inv, s0 * inv, t0 * inv

    def resultant(self, other: "Poly"):
        """Resultant; zero iff f, g share a root over the algebraic closure."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            raise FieldError("resultant of zero polynomial")
        if isinstance(self.field, RationalField):
            return _resultant_subresultant_qq(self, other)
        return _resultant_euclid(self, other)

    def squarefree_part(self) -> "Poly":
        """Monic product of the distinct irreducible factors."""
        if self.is_zero():
            raise FieldError("squarefree part of zero polynomial")
        if self.degree == 0:
            return Poly.one(self.field)
        g = self.gcd(self.derivative())
        return self.exact_div(g).monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0


def poly_divmod(f: Poly, g: Poly):
    return f.divmod(g)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    return f.gcd(g)


def resultant(f: Poly, g: Poly):
    return f.resultant(g)


def squarefree_part(f: Poly) -> Poly:
    return f.squarefree_part()


# ---------------------------------------------------------------------------
# Integer-level helpers for the Q case (coefficient growth control).
# ---------------------------------------------------------------------------


def to_int_coeffs(f: Poly) -> tuple[List[int], Fraction]:
    """Primitive integer coefficients c and content: f = content * Poly(c)."""
    if not isinstance(f.field, RationalField):
        raise FieldError("integer coefficients require a rational polynomial")
    if f.is_zero():
        return [], Fraction(0)
    from math import lcm

    den = lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    if ints[-1] < 0:
        g = -g
    ints = [c // g for c in ints]
    return ints, Fraction(g, den)


def from_int_coeffs(ints: List[int]) -> Poly:
    return Poly(QQ, ints)


def _gcd_rational(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q via a primitive PRS on integer coefficients."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    fa, _ = to_int_coeffs(a)
    fb, _ = to_int_coeffs(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa

    def prim(c: List[int]) -> List[int]:
        g = 0
        for x in c:
            g = int_gcd(g, abs(x))
        if c and c[-1] < 0:
            g = -g
        return [x // g for x in c] if g else c

    while fb:
        # pseudo-remainder of fa by fb
        r = list(fa)
        d = len(fb) - 1
        lcb = fb[-1]
        while len(r) - 1 >= d and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            k = len(r) - 1 - d
            top = r[-1]
            r = [c * lcb for c in r]
            for i, c in enumerate(fb):
                r[k + i] -= top * c
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        fa, fb = fb, prim(r)
    return from_int_coeffs(fa).monic()


def _resultant_subresultant_qq(f: Poly, g: Poly) -> Fraction:
    """Resultant over Q via the subresultant PRS on integer coefficients."""
    fi, cf = to_int_coeffs(f)
    gi, cg = to_int_coeffs(g)
    m, n = len(fi) - 1, len(gi) - 1
    r = _subresultant_resultant_zz(fi, gi)
    return Fraction(r) * cf**n * cg**m


def _prem_zz(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    r = list(a)
    d = len(b) - 1
    lcb = b[-1]
    e = len(a) - len(b) + 1
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        top = r[-1]
        r = [c * lcb for c in r]
        for i, c in enumerate(b):
            r[k + i] -= top * c
        r.pop()
        e -= 1
    return [c * lcb**max(0, e) for c in r]


def _subresultant_resultant_zz(f: List[int], g: List[int]) -> int:
    """Resultant of integer polynomials via the subresultant PRS.

    Cohen, "A Course in Computational Algebraic Number Theory", Alg. 3.3.7.
    """
    sign = 1
    if len(f) < len(g):
        f, g = g, f
        if ((len(f) - 1) * (len(g) - 1)) % 2:
            sign = -sign
    if len(g) == 1:
        return sign * g[0] ** (len(f) - 1)

    a, b = f, g
    gg, h = 1, 1
    while len(b) > 1:
        delta = len(a) - len(b)
        if ((len(a) - 1) % 2) and ((len(b) - 1) % 2):
            sign = -sign
        r = _prem_zz(a, b)
        if not r:
            return 0
        denom = gg * h**delta
        a, b = b, [c // denom for c in r]
        gg = a[-1]
        if delta > 0:
            h = gg**delta // h ** (delta - 1)
    da = len(a) - 1
    val = b[0] ** da
    if da >= 1:
        val //= h ** (da - 1)
    return sign * val


def _resultant_euclid(f: Poly, g: Poly):
    """Resultant via the Euclidean remainder sequence (small-degree fields)."""
    field = f.field
    one = field.one()

    def rec(a: Poly, b: Poly):
        if b.is_zero():
            return field.zero()
        if b.degree == 0:
            return b.lc() ** a.degree
        r = a % b
        la, lb = a.degree, b.degree
        if r.is_zero():
            return field.zero()
        sign = -one if (la * lb) % 2 else one
        return sign * b.lc() ** (la - r.degree) * rec(b, r)

    if f.degree < g.degree:
        sign = -1 if (f.degree * g.degree) % 2 else 1
        return sign * _resultant_euclid(g, f)
    return rec(f, g)
