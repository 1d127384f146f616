"""Univariate polynomial factorization over Q and over quadratic fields.

Over Q: Cantor-Zassenhaus mod a small good prime, multifactor Hensel
lifting past twice the Mignotte bound, exhaustive subset recombination.
Over Q(sqrt(d)): Trager's norm method, reducing to the rational case.

Degrees in this project stay modest (<= ~200), so the exponential
recombination worst case is not a concern.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .field import QQ, FieldError, QuadElem, QuadraticField, RationalField
from .poly import Poly, from_int_coeffs, to_int_coeffs

_EDF_SEED = 0x5EED


@dataclass
class Factorization:
    """unit * prod(factor^multiplicity), factors monic irreducible."""

    unit: object
    factors: List[Tuple[Poly, int]]

    def expand(self) -> Poly:
        out = None
        for f, m in self.factors:
            p = f**m
            out = p if out is None else out * p
        if out is None:
            first = self.factors[0][0] if self.factors else None
        if out is None:
            raise FieldError("empty factorization has no field context")
        return out * self.unit

    def degrees(self) -> List[int]:
        out = []
        for f, m in self.factors:
            out.extend([f.degree] * m)
        return sorted(out)


# ---------------------------------------------------------------------------
# Arithmetic in GF(p)[x]; dense lists, low-to-high, p an odd prime.
# ---------------------------------------------------------------------------


def _gf_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return _gf_trim(out)


def _gf_divmod(f, g, p):
    if not g:
        raise ZeroDivisionError("gf division by zero")
    inv = pow(g[-1], p - 2, p)
    r = [c % p for c in f]
    q = [0] * max(0, len(f) - len(g) + 1)
    d = len(g) - 1
    while True:
        _gf_trim(r)
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        c = (r[-1] * inv) % p
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % p
    return _gf_trim(q), _gf_trim(r)


def _gf_mod(f, g, p):
    return _gf_divmod(f, g, p)[1]


def _gf_gcd(f, g, p):
    a, b = [c % p for c in f], [c % p for c in g]
    _gf_trim(a), _gf_trim(b)
    while b:
        a, b = b, _gf_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _gf_ext_gcd(f, g, p):
    """(gcd, s, t) with s*f + t*g = gcd, gcd monic."""
    r0, r1 = [c % p for c in f], [c % p for c in g]
    _gf_trim(r0), _gf_trim(r1)
    s0, s1 = [1], []
    t0, t1 = [], [1]

    def sub(a, b):
        n = max(len(a), len(b))
        return _gf_trim(
            [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
             for i in range(n)]
        )

    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, _gf_mul(q, s1, p))
        t0, t1 = t1, sub(t0, _gf_mul(q, t1, p))
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = [(c * inv) % p for c in r0]
        s0 = [(c * inv) % p for c in s0]
        t0 = [(c * inv) % p for c in t0]
    return r0, s0, t0


def _gf_pow_mod(f, e, mod, p):
    out = [1]
    base = _gf_mod(f, mod, p)
    while e:
        if e & 1:
            out = _gf_mod(_gf_mul(out, base, p), mod, p)
        base = _gf_mod(_gf_mul(base, base, p), mod, p)
        e >>= 1
    return out


def _gf_monic(f, p):
    if not f:
        return f
    inv = pow(f[-1], p - 2, p)
    return [(c * inv) % p for c in f]


def _gf_deriv(f, p):
    return _gf_trim([(i * c) % p for i, c in enumerate(f)][1:])


def _gf_is_squarefree(f, p):
    d = _gf_deriv(f, p)
    if not d:
        return False
    return len(_gf_gcd(f, d, p)) == 1


def _gf_factor_squarefree(f, p) -> List[list]:
    """Irreducible factors of a monic squarefree f over GF(p), p odd."""
    rng = random.Random(_EDF_SEED)
    factors = []
    # distinct-degree decomposition
    xq = [0, 1]
    h = _gf_monic(list(f), p)
    d = 0
    pieces = []  # (degree, product of that degree's irreducibles)
    while len(h) - 1 > 0:
        d += 1
        if 2 * d > len(h) - 1:
            pieces.append((len(h) - 1, h))
            break
        xq = _gf_pow_mod(xq, p, h, p)
        # xq = x^(p^d) mod h
        probe = list(xq)
        if len(probe) < 2:
            probe += [0] * (2 - len(probe))
        probe[1] = (probe[1] - 1) % p
        g = _gf_gcd(h, _gf_trim(probe), p)
        if len(g) > 1:
            pieces.append((d, g))
            h = _gf_divmod(h, g, p)[0]
            xq = _gf_mod(xq, h, p)
    # equal-degree splitting (Cantor-Zassenhaus)
    for d, prod in pieces:
        stack = [prod]
        while stack:
            cur = stack.pop()
            if len(cur) - 1 == d:
                factors.append(_gf_monic(cur, p))
                continue
            while True:
                r = [rng.randrange(p) for _ in range(len(cur) - 1)]
                _gf_trim(r)
                if len(r) < 2:
                    continue
                t = _gf_pow_mod(r, (p**d - 1) // 2, cur, p)
                if len(t) < 1:
                    t = [0]
                t = list(t)
                t[0] = (t[0] - 1) % p
                g = _gf_gcd(cur, _gf_trim(t), p)
                if 0 < len(g) - 1 < len(cur) - 1:
                    stack.append(g)
                    stack.append(_gf_divmod(cur, g, p)[0])
                    break
    factors.sort(key=lambda v: (len(v), v))
    return factors


# ---------------------------------------------------------------------------
# Hensel lifting in Z[x].
# ---------------------------------------------------------------------------


def _zx_trunc(f, m):
    """Symmetric residues in (-m/2, m/2]."""
    out = []
    half = m // 2
    for c in f:
        c = c % m
        if c > half:
            c -= m
        out.append(c)
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_mul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_add(f, g):
    n = max(len(f), len(g))
    out = [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _zx_sub(f, g):
    return _zx_add(f, [-c for c in g])


def _zx_divmod_monic_mod(f, g, m):
    """Division by monic g, coefficients mod m."""
    r = [c % m for c in f]
    q = [0] * max(0, len(f) - len(g) + 1)
    d = len(g) - 1
    while True:
        while r and r[-1] % m == 0:
            r.pop()
        if len(r) - 1 < d:
            break
        k = len(r) - 1 - d
        c = r[-1] % m
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % m
    while q and q[-1] == 0:
        q.pop()
    return q, r


def _hensel_step(m, f, g, h, s, t):
    """Lift f = g*h (mod m), s*g + t*h = 1 (mod m), lc(h)=1, to mod m^2."""
    M = m * m
    e = _zx_trunc(_zx_sub(f, _zx_mul(g, h)), M)
    q, r = _zx_divmod_monic_mod(_zx_mul(s, e), h, M)
    q = _zx_trunc(q, M)
    r = _zx_trunc(r, M)
    u = _zx_add(_zx_mul(t, e), _zx_mul(q, g))
    G = _zx_trunc(_zx_add(g, u), M)
    H = _zx_trunc(_zx_add(h, r), M)
    u = _zx_add(_zx_mul(s, G), _zx_mul(t, H))
    b = _zx_trunc(_zx_sub(u, [1]), M)
    c, d = _zx_divmod_monic_mod(_zx_mul(s, b), H, M)
    c = _zx_trunc(c, M)
    d = _zx_trunc(d, M)
    u = _zx_add(_zx_mul(t, b), _zx_mul(c, G))
    S = _zx_trunc(_zx_sub(s, d), M)
    T = _zx_trunc(_zx_sub(t, u), M)
    return G, H, S, T


def _hensel_lift(p, f, f_list, l):
    """Lift f = lc(f) * prod(f_i) (mod p) to mod p^l, f_i monic."""
    r = len(f_list)
    lc = f[-1]
    pl = p**l
    if r == 1:
        inv = pow(lc % pl, -1, pl)
        return [_zx_trunc([c * inv for c in f], pl)]
    k = r // 2
    d = math.ceil(math.log2(l)) if l > 1 else 1
    g = [lc % p]
    for fi in f_list[:k]:
        g = _gf_mul(g, [c % p for c in fi], p)
    h = [1]
    for fi in f_list[k:]:
        h = _gf_mul(h, [c % p for c in fi], p)
    _, s, t = _gf_ext_gcd(g, h, p)
    g = _zx_trunc(g, p)
    h = _zx_trunc(h, p)
    s = _zx_trunc(s, p)
    t = _zx_trunc(t, p)
    m = p
    for _ in range(d):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, f_list[:k], l) + _hensel_lift(p, h, f_list[k:], l)


# ---------------------------------------------------------------------------
# Zassenhaus over Z / Q.
# ---------------------------------------------------------------------------


def _choose_prime(f_int: List[int]) -> int:
    """Smallest odd prime keeping f squarefree with invertible lc."""
    import gmpy2

    p = 3
    while True:
        if gmpy2.is_prime(p) and f_int[-1] % p != 0:
            fm = _gf_trim([c % p for c in f_int])
            if len(fm) == len(f_int) and _gf_is_squarefree(fm, p):
                return p
        p += 2


def _primitive(f: List[int]) -> List[int]:
    g = 0
    for c in f:
        g = math.gcd(g, abs(c))
    if f and f[-1] < 0:
        g = -g
    return [c // g for c in f] if g else list(f)


def _lifted_factors(f: List[int]):
    """p-adic factors of primitive squarefree f, lifted past the Mignotte bound."""
    n = len(f) - 1
    A = max(abs(c) for c in f)
    b = f[-1]
    B = math.isqrt(n + 1) + 1
    B = B * (2**n) * A * abs(b)  # Mignotte-style bound on factor coefficients
    p = _choose_prime(f)
    l = 1
    pl = p
    while pl <= 2 * B:  # lift strictly past twice the bound
        pl *= p
        l += 1
    modular = _gf_factor_squarefree(_gf_monic([c % p for c in f], p), p)
    lifted = _hensel_lift(p, f, modular, l)
    return lifted, p**l


def _zassenhaus_squarefree(f: List[int]) -> List[List[int]]:
    """Irreducible factors of a primitive squarefree integer polynomial."""
    n = len(f) - 1
    if n <= 1:
        return [list(f)]
    lifted, pl = _lifted_factors(f)

    indices = list(range(len(lifted)))
    factors: List[List[int]] = []
    rest = list(f)
    s = 1
    from itertools import combinations

    while 2 * s <= len(indices):
        found = False
        for S in combinations(indices, s):
            G = [rest[-1]]
            for i in S:
                G = _zx_trunc(_zx_mul(G, lifted[i]), pl)
            G = _primitive(G)
            # trial division over Z
            q, r = _zx_trial_div(rest, G)
            if r is not None and not r:
                factors.append(G)
                rest = _primitive(q)
                indices = [i for i in indices if i not in S]
                found = True
                break
        if not found:
            s += 1
    if len(rest) > 1:
        factors.append(_primitive(rest))
    factors.sort(key=lambda v: (len(v), v))
    return factors


def _zx_trial_div(f, g):
    """Exact division attempt over Z; returns (q, []) on success, (None, None) else."""
    if not g:
        return None, None
    r = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    d = len(g) - 1
    lc = g[-1]
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < d:
            break
        if r[-1] % lc != 0:
            return None, None
        k = len(r) - 1 - d
        c = r[-1] // lc
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
    if any(r):
        return None, None
    while q and q[-1] == 0:
        q.pop()
    return q, r


# ---------------------------------------------------------------------------
# Squarefree decomposition (Yun), generic characteristic-0 field.
# ---------------------------------------------------------------------------


def squarefree_decomposition(f: Poly) -> List[Tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities (Yun's algorithm)."""
    if f.is_zero():
        raise FieldError("zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    out = []
    d = f.gcd(f.derivative())
    b = f.exact_div(d)
    c = f.derivative().exact_div(d)
    z = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = b.gcd(z)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b.exact_div(a)
        c = z.exact_div(a)
        z = c - b.derivative()
        i += 1
    return out


# ---------------------------------------------------------------------------
# Public entry points.
# ---------------------------------------------------------------------------


def factor_rational_poly(f: Poly) -> Factorization:
    """Complete factorization into monic irreducibles over Q."""
    if not isinstance(f.field, RationalField):
        raise FieldError("factor_rational_poly requires a rational polynomial")
    if f.is_zero():
        raise FieldError("cannot factor the zero polynomial")
    unit = f.lc()
    if f.degree == 0:
        return Factorization(unit, [])
    factors: List[Tuple[Poly, int]] = []
    for sqf, mult in squarefree_decomposition(f):
        ints, _ = to_int_coeffs(sqf)
        for part in _zassenhaus_squarefree(ints):
            factors.append((from_int_coeffs(part).monic(), mult))
    factors.sort(key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs]))
    return Factorization(unit, factors)


def low_degree_rational_factors(f: Poly, max_deg: int = 2) -> List[Poly]:
    """All monic irreducible factors of degree <= max_deg over Q.

    Avoids full recombination: only subsets of the lifted p-adic factors
    with total degree <= max_deg are tried, so this stays polynomial in
    the number of modular factors even when the cofactor is a large
    irreducible (e.g. high division polynomials).
    """
    if not isinstance(f.field, RationalField):
        raise FieldError("low_degree_rational_factors requires a rational polynomial")
    if f.is_zero():
        raise FieldError("cannot factor the zero polynomial")
    if max_deg not in (1, 2):
        raise FieldError("max_deg must be 1 or 2")
    found: List[Poly] = []
    for sqf, _ in squarefree_decomposition(f):
        if sqf.degree <= max_deg:
            # small enough to finish completely
            for g, _ in factor_rational_poly(sqf).factors:
                found.append(g)
            continue
        ints, _ = to_int_coeffs(sqf)
        rest = list(ints)
        lifted, pl = _lifted_factors(ints)
        ones = [g for g in lifted if len(g) - 1 == 1]
        twos = [g for g in lifted if len(g) - 1 == 2]
        candidates = [[g] for g in ones] + [[g] for g in twos]
        if max_deg >= 2:
            from itertools import combinations

            candidates += [list(pair) for pair in combinations(ones, 2)]
        for cand in candidates:
            G = [rest[-1]]
            for g in cand:
                G = _zx_trunc(_zx_mul(G, g), pl)
            G = _primitive(G)
            q, r = _zx_trial_div(rest, G)
            if r is not None and not r:
                mono = from_int_coeffs(G).monic()
                if mono.degree == 2 and max_deg >= 2:
                    # a rational quadratic divisor may split further
                    for h, _ in factor_rational_poly(mono).factors:
                        found.append(h)
                elif mono.degree >= 1:
                    found.append(mono)
                rest = _primitive(q)
        # note: candidate products built from distinct lifted factors are
        # coprime, so sequential trial division against the shrinking rest
        # finds every degree<=2 irreducible exactly once
    uniq = []
    for g in found:
        if g not in uniq:
            uniq.append(g)
    uniq.sort(key=lambda p: (p.degree, [str(c) for c in p.coeffs]))
    return uniq


def factor_quadratic_field_poly(f: Poly) -> Factorization:
    """Complete factorization over Q(sqrt(d)) via Trager's norm method."""
    field = f.field
    if not isinstance(field, QuadraticField):
        raise FieldError("expected a polynomial over a quadratic field")
    if f.is_zero():
        raise FieldError("cannot factor the zero polynomial")
    unit = f.lc()
    if f.degree == 0:
        return Factorization(unit, [])
    factors: List[Tuple[Poly, int]] = []
    for sqf, mult in squarefree_decomposition(f):
        for part in _trager_squarefree(sqf):
            factors.append((part, mult))
    factors.sort(key=lambda fm: (fm[0].degree, [str(c) for c in fm[0].coeffs]))
    return Factorization(unit, factors)


def _conj_poly(f: Poly) -> Poly:
    return Poly(f.field, [c.conjugate() for c in f.coeffs])


def _trager_squarefree(f: Poly) -> List[Poly]:
    """Irreducible factors of a monic squarefree f over Q(sqrt(d))."""
    field = f.field
    qf = field.qf
    theta = qf.sqrt_gen()
    x = Poly.x(field)
    for s in range(0, 4 * f.degree + 8):
        fs = f(x + s * theta)  # f shifted so the norm becomes squarefree
        norm_k = fs * _conj_poly(fs)
        assert all(c.is_rational() for c in norm_k.coeffs)
        norm = Poly(QQ, [c.to_rational() for c in norm_k.coeffs])
        if not norm.is_squarefree():
            continue
        rat_factors = factor_rational_poly(norm).factors
        out = []
        for q, _ in rat_factors:
            qk = q.map_field(field)
            g = fs.gcd(qk)
            if g.degree > 0:
                out.append(g(x - s * theta).monic())
        out.sort(key=lambda p: (p.degree, [str(c) for c in p.coeffs]))
        assert sum(p.degree for p in out) == f.degree
        return out
    raise FieldError("no squarefree-norm shift found (unexpected)")
