"""Primitive points on elliptic curves: exact arithmetic, division
points, canonical heights, and the supporting group combinatorics."""

__version__ = "0.1.0"

from .field import QQ, QuadraticField, QuadElem, Rational, FieldError
from .poly import Poly
from .curve import Curve, Point

__all__ = [
    "QQ",
    "QuadraticField",
    "QuadElem",
    "Rational",
    "FieldError",
    "Poly",
    "Curve",
    "Point",
]
