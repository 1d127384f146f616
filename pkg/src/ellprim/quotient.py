"""Quotient algebras F[x]/(h) over the exact base fields.

Elements are residue classes of polynomials. When the modulus is
irreducible this is a field; with a composite modulus, attempting to
invert a zero divisor raises ZeroDivisorFound carrying a nontrivial
factor of the modulus, which callers can use to split the algebra.

Square roots use a Trager-style shifted norm: the norm of z^2 - alpha
down to the base field is computed by evaluation/interpolation of
Res_x(h(x), (z - j*x)^2 - alpha(x)), factored over the base field, and
candidate roots are pulled back with a gcd.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .factor import factor_quadratic_field_poly, factor_rational_poly
from .field import FieldError, QuadElem, QuadraticField, RationalField, rational_sqrt
from .poly import Poly


class ZeroDivisorFound(FieldError):
    """Raised when inversion meets a zero divisor; carries a modulus factor."""

    def __init__(self, factor: Poly):
        super().__init__("zero divisor modulo reducible modulus")
        self.factor = factor


class QuotientRing:
    """F[x]/(h) with h monic of positive degree over QQ or a quadratic field."""

    def __init__(self, base, modulus: Poly):
        if modulus.field != base:
            raise FieldError("modulus field mismatch")
        if modulus.degree < 1:
            raise FieldError("modulus must have positive degree")
        self.base = base
        self.modulus = modulus.monic()

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("QuotientRing", self.base, tuple(self.modulus.coeffs)))

    def __repr__(self):
        return "%r[x]/(%r)" % (self.base, self.modulus)

    def element(self, rep: Poly) -> "AlgebraElem":
        return AlgebraElem(self, rep % self.modulus)

    def gen(self) -> "AlgebraElem":
        return self.element(Poly.x(self.base))

    def zero(self) -> "AlgebraElem":
        return AlgebraElem(self, Poly.zero(self.base))

    def one(self) -> "AlgebraElem":
        return AlgebraElem(self, Poly.one(self.base))

    def convert(self, x) -> "AlgebraElem":
        if isinstance(x, AlgebraElem):
            if x.ring != self:
                raise FieldError("element from a different quotient ring")
            return x
        if isinstance(x, Poly):
            if x.field != self.base:
                raise FieldError("polynomial over the wrong base field")
            return self.element(x)
        return AlgebraElem(self, Poly.constant(self.base, self.base.convert(x)))

    # ------------------------------------------------------------------
    def base_factor(self, f: Poly):
        if isinstance(self.base, RationalField):
            return factor_rational_poly(f)
        if isinstance(self.base, QuadraticField):
            return factor_quadratic_field_poly(f)
        raise FieldError("unsupported base field for factorization")

    def base_sqrt(self, c):
        if isinstance(c, QuadElem):
            return c.sqrt()
        return rational_sqrt(Fraction(c))


class AlgebraElem:
    __slots__ = ("ring", "rep")

    def __init__(self, ring: QuotientRing, rep: Poly):
        self.ring = ring
        self.rep = rep

    def _coerce(self, other) -> "AlgebraElem | None":
        if isinstance(other, AlgebraElem):
            if other.ring != self.ring:
                raise FieldError("mixed quotient rings")
            return other
        try:
            return self.ring.convert(other)
        except (FieldError, TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElem(self.ring, (self.rep + o.rep) % self.ring.modulus)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElem(self.ring, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElem(self.ring, (self.rep - o.rep) % self.ring.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraElem(self.ring, (self.rep * o.rep) % self.ring.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraElem":
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.rep.ext_gcd(self.ring.modulus)
        if g.degree > 0:
            raise ZeroDivisorFound(g)
        return AlgebraElem(self.ring, (s * (1 / g[0])) % self.ring.modulus)

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
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        return hash((self.ring, tuple(self.rep.coeffs)))

    def __bool__(self):
        return not self.rep.is_zero()

    def __repr__(self):
        return "[%r]" % (self.rep,)

    def minimal_polynomial(self) -> Poly:
        """Characteristic polynomial factor: min poly of this class.

        Computed as the squarefree part of Res_x(h(x), z - rep(x)).
        """
        return _char_poly(self).squarefree_part().monic()


# ---------------------------------------------------------------------------
# Norms down to the base field, via evaluation/interpolation.
# ---------------------------------------------------------------------------


def _lagrange_interpolate(base, xs, ys) -> Poly:
    out = Poly.zero(base)
    x = Poly.x(base)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        num = Poly.one(base)
        den = base.one()
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * (x - xj)
            den = den * (xi - xj)
        out = out + num * (yi / den)
    return out


def algebra_norm(f_over_k: List["AlgebraElem"]) -> Poly:
    """Norm of sum(f_i * z^i) in K[z] down to base[z], K = base[x]/(h).

    Returns Res_x(h(x), F(x, z)) as a polynomial in z over the base field.
    """
    ring = f_over_k[-1].ring
    base = ring.base
    h = ring.modulus
    deg_z = len(f_over_k) - 1
    npts = h.degree * deg_z + 1
    xs = [base.convert(k) for k in range(npts)]
    ys = []
    for z0 in xs:
        # F(x, z0) as a polynomial in x over base
        g = Poly.zero(base)
        zp = base.one()
        for coeff in f_over_k:
            g = g + coeff.rep * zp
            zp = zp * z0
        # reps are reduced mod h, so g vanishes exactly when h | F(x, z0),
        # i.e. z0 is a root of the norm
        ys.append(base.zero() if g.is_zero() else h.resultant(g))
    return _lagrange_interpolate(base, xs, ys)


def _char_poly(a: AlgebraElem) -> Poly:
    """Characteristic polynomial of a over the base: Res_x(h, z - a(x))."""
    ring = a.ring
    return algebra_norm([-a, ring.one()])


def sqrt_in_quotient(alpha: AlgebraElem) -> Optional[AlgebraElem]:
    """A square root of alpha in base[x]/(h) if one exists, else None.

    Requires an irreducible modulus (a ZeroDivisorFound escaping from the
    gcd machinery signals a composite modulus).
    """
    ring = alpha.ring
    base = ring.base
    if not alpha:
        return ring.zero()
    # cheap path: constants with a base-field square root
    if alpha.rep.degree <= 0:
        r = ring.base_sqrt(alpha.rep[0])
        if r is not None:
            return ring.convert(r)
    xi = ring.gen()
    field_k = _QuotientAsField(ring)
    for j in range(0, 4 * ring.degree + 8):
        shift = xi * j
        # F_j(z) = (z + j*xi)^2 - alpha; a root s gives sqrt = s + j*xi
        coeffs = [shift * shift - alpha, shift * 2, ring.one()]
        norm = algebra_norm(coeffs)
        if not norm.is_squarefree():
            continue
        for q, _ in ring.base_factor(norm).factors:
            if q.degree != 1:
                continue
            # candidate root in the base field itself
            s = ring.convert(-q[0])
            cand = s + shift
            if cand * cand == alpha:
                return cand
        # no linear factor of the norm yields a root in K via the base;
        # check factors of higher degree through a gcd in K[z]
        zpoly = Poly(field_k, [field_k.convert(c) for c in coeffs])
        for q, _ in ring.base_factor(norm).factors:
            qk = Poly(field_k, [field_k.convert(ring.convert(c)) for c in q.coeffs])
            g = zpoly.gcd(qk)
            if g.degree == 1:
                s = -(g[0] / g[1])
                cand = s.elem + shift
                if cand * cand == alpha:
                    return cand
        return None
    raise FieldError("no squarefree-norm shift found for sqrt (unexpected)")


def is_square_in_quotient(alpha: AlgebraElem) -> bool:
    return sqrt_in_quotient(alpha) is not None


# ---------------------------------------------------------------------------
# Field-descriptor wrapper so Poly can run over a quotient field.
# ---------------------------------------------------------------------------


class _FieldWrapped:
    __slots__ = ("field", "elem")

    def __init__(self, field: "_QuotientAsField", elem: AlgebraElem):
        self.field = field
        self.elem = elem

    def _coerce(self, other):
        if isinstance(other, _FieldWrapped):
            if other.field != self.field:
                raise FieldError("mixed quotient fields")
            return other
        try:
            return self.field.convert(other)
        except (FieldError, TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _FieldWrapped(self.field, self.elem + o.elem)

    __radd__ = __add__

    def __neg__(self):
        return _FieldWrapped(self.field, -self.elem)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _FieldWrapped(self.field, self.elem - o.elem)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _FieldWrapped(self.field, self.elem * o.elem)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _FieldWrapped(self.field, self.elem / o.elem)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        return _FieldWrapped(self.field, self.elem**n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.elem == o.elem

    def __hash__(self):
        return hash(self.elem)

    def __bool__(self):
        return bool(self.elem)

    def __repr__(self):
        return repr(self.elem)


class _QuotientAsField:
    """Field descriptor over a quotient ring, usable as Poly coefficients."""

    __slots__ = ("ring",)

    def __init__(self, ring: QuotientRing):
        self.ring = ring

    def __eq__(self, other):
        return isinstance(other, _QuotientAsField) and other.ring == self.ring

    def __hash__(self):
        return hash(("_QuotientAsField", self.ring))

    def __repr__(self):
        return "Frac(%r)" % (self.ring,)

    def zero(self):
        return _FieldWrapped(self, self.ring.zero())

    def one(self):
        return _FieldWrapped(self, self.ring.one())

    def convert(self, x):
        if isinstance(x, _FieldWrapped):
            if x.field != self:
                raise FieldError("element of a different quotient field")
            return x
        return _FieldWrapped(self, self.ring.convert(x))


def quotient_field(ring: QuotientRing) -> _QuotientAsField:
    return _QuotientAsField(ring)
