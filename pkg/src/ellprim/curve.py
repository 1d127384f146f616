"""Short Weierstrass curves y^2 = x^3 + a*x + b over the exact fields.

Point arithmetic is the usual affine chord-and-tangent, valid over any
of the package's field descriptors (rationals, quadratic fields, or
quotient algebras wrapped as fields).

Division polynomials are stored y-free: psi_n = w_n * y^(e_n) with
e_n = 1 for even n and 0 for odd n, so every exported quantity is a
plain polynomial in x.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .field import QQ, FieldError
from .poly import Poly


class Curve:
    """y^2 = x^3 + a*x + b, nonsingular."""

    __slots__ = ("field", "a", "b")

    def __init__(self, a, b, field=QQ):
        self.field = field
        self.a = field.convert(a)
        self.b = field.convert(b)
        if not self.discriminant():
            raise FieldError("singular curve: 4a^3 + 27b^2 = 0")

    def discriminant(self):
        return (self.a**3 * 4 + self.b**2 * 27) * (-16)

    def j_invariant(self):
        num = self.a**3 * 6912  # -1728 * (4a)^3 / disc
        return num / (self.a**3 * 4 + self.b**2 * 27)

    def rhs(self, x):
        return x**3 + self.a * x + self.b

    def rhs_poly(self) -> Poly:
        x = Poly.x(self.field)
        return x**3 + x * self.a + self.b

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and other.field == self.field
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash(("Curve", self.field, self.a, self.b))

    def __repr__(self):
        return "Curve(y^2 = x^3 + (%r)x + (%r))" % (self.a, self.b)

    def infinity(self) -> "Point":
        return Point(self, None, None, infinity=True)

    def point(self, x, y) -> "Point":
        x = self.field.convert(x)
        y = self.field.convert(y)
        if y * y != self.rhs(x):
            raise FieldError("point not on curve: (%r, %r)" % (x, y))
        return Point(self, x, y)

    def lift_x(self, x) -> Optional[Tuple["Point", "Point"]]:
        """Both points above x if the rhs is a square in the base field."""
        x = self.field.convert(x)
        rhs = self.rhs(x)
        y = _field_sqrt(self.field, rhs)
        if y is None:
            return None
        return self.point(x, y), self.point(x, -y)

    def base_change(self, field) -> "Curve":
        return Curve(field.convert(self.a), field.convert(self.b), field)


def _field_sqrt(field, value):
    from .field import QuadraticField, RationalField, rational_sqrt

    if isinstance(field, RationalField):
        return rational_sqrt(Fraction(value))
    if isinstance(field, QuadraticField):
        return value.sqrt()
    from .quotient import _QuotientAsField, sqrt_in_quotient

    if isinstance(field, _QuotientAsField):
        r = sqrt_in_quotient(field.convert(value).elem)
        return None if r is None else field.convert(r)
    raise FieldError("no square-root routine for %r" % (field,))


class Point:
    __slots__ = ("curve", "x", "y", "_inf")

    def __init__(self, curve: Curve, x, y, infinity: bool = False):
        self.curve = curve
        self._inf = infinity
        self.x = None if infinity else x
        self.y = None if infinity else y

    def is_infinity(self) -> bool:
        return self._inf

    def __eq__(self, other):
        if not isinstance(other, Point) or other.curve != self.curve:
            return NotImplemented
        if self._inf or other._inf:
            return self._inf and other._inf
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self._inf:
            return hash((self.curve, "inf"))
        return hash((self.curve, self.x, self.y))

    def __repr__(self):
        if self._inf:
            return "O"
        return "(%r, %r)" % (self.x, self.y)

    def __neg__(self):
        if self._inf:
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return add_points(self, other)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        return scalar_mul(n, self)

    __mul__ = __rmul__


def add_points(p: Point, q: Point) -> Point:
    if p.curve != q.curve:
        raise FieldError("points on different curves")
    e = p.curve
    if p.is_infinity():
        return q
    if q.is_infinity():
        return p
    if p.x == q.x:
        if p.y == -q.y:  # includes the 2-torsion y == 0 case
            return e.infinity()
        lam = (p.x * p.x * 3 + e.a) / (p.y * 2)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - p.x - q.x
    y3 = lam * (p.x - x3) - p.y
    return Point(e, x3, y3)


def scalar_mul(n: int, p: Point) -> Point:
    if n < 0:
        return scalar_mul(-n, -p)
    out = p.curve.infinity()
    add = p
    while n:
        if n & 1:
            out = add_points(out, add)
        add = add_points(add, add)
        n >>= 1
    return out


# ---------------------------------------------------------------------------
# Division polynomials (y-free form).
# ---------------------------------------------------------------------------


class DivisionPolys:
    """Tables of w_n where psi_n = w_n * y^(n even), for a fixed curve.

    psi_n is the n-th division polynomial: psi_n(P) = 0 iff [n]P = O for
    an affine point P.
    """

    def __init__(self, curve: Curve):
        self.curve = curve
        f = curve.field
        x = Poly.x(f)
        a, b = curve.a, curve.b
        self.C = x**3 + x * a + b  # y^2 on the curve
        self._w: Dict[int, Poly] = {
            -1: -Poly.one(f),
            0: Poly.zero(f),
            1: Poly.one(f),
            2: Poly.constant(f, f.convert(2)),
            3: x**4 * 3 + x**2 * (a * 6) + x * (b * 12) - a * a,
            4: (
                x**6
                + x**4 * (a * 5)
                + x**3 * (b * 20)
                - x**2 * (a * a * 5)
                - x * (a * b * 4)
                - (b * b * 8 + a**3)
            )
            * 4,
        }

    def w(self, n: int) -> Poly:
        if n < -1:
            raise FieldError("division polynomial index out of range")
        if n not in self._w:
            C2 = self.C * self.C
            if n % 2:
                m = (n - 1) // 2
                lo = self.w(m - 1) * self.w(m + 1) ** 3
                hi = self.w(m + 2) * self.w(m) ** 3
                self._w[n] = hi * C2 - lo if m % 2 == 0 else hi - lo * C2
            else:
                m = n // 2
                num = self.w(m) * (
                    self.w(m + 2) * self.w(m - 1) ** 2
                    - self.w(m - 2) * self.w(m + 1) ** 2
                )
                q, r = num.divmod(Poly.constant(self.curve.field, self.curve.field.convert(2)))
                assert r.is_zero()
                self._w[n] = q
        return self._w[n]

    def psi_squared(self, n: int) -> Poly:
        """psi_n^2 as a polynomial in x."""
        sq = self.w(n) ** 2
        return sq * self.C if n % 2 == 0 else sq

    def psi_product(self, n: int) -> Poly:
        """psi_(n-1) * psi_(n+1) as a polynomial in x."""
        prod = self.w(n - 1) * self.w(n + 1)
        return prod * self.C if n % 2 == 1 else prod

    def phi(self, n: int) -> Poly:
        """Numerator of x([n]P): phi_n = x*psi_n^2 - psi_(n+1)*psi_(n-1)."""
        x = Poly.x(self.curve.field)
        return x * self.psi_squared(n) - self.psi_product(n)

    def x_multiple_map(self, n: int) -> Tuple[Poly, Poly]:
        """(phi_n, psi_n^2): x([n]P) = phi_n(x) / psi_n^2(x)."""
        if n < 1:
            raise FieldError("x_multiple_map needs n >= 1")
        return self.phi(n), self.psi_squared(n)

    def y_multiple_ratio(self, n: int) -> Tuple[Poly, Poly]:
        """(num, den) with y([n]P) = y * num(x)/den(x) for affine [n]P.

        num/den = w_(2n) / (2 * w_n^4 * C^(2*[n even])).
        """
        if n < 1:
            raise FieldError("y_multiple_ratio needs n >= 1")
        num = self.w(2 * n)
        den = self.w(n) ** 4 * 2
        if n % 2 == 0:
            den = den * self.C * self.C
        return num, den

    def x_division_poly(self, n: int) -> Poly:
        """Vanishes exactly at x-coordinates of affine n-torsion points."""
        if n < 1:
            raise FieldError("division polynomial index out of range")
        wn = self.w(n)
        return wn * self.C if n % 2 == 0 else wn
