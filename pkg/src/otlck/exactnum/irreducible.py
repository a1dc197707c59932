"""Unconditional irreducibility over Q for integer polynomials.

Primary route: factorization degree patterns modulo several small primes.
Distinct-degree factorization over F_p yields the multiset of factor
degrees; a rational factor of degree k would reduce to a sub-multiset
summing to k modulo every good prime, so intersecting the achievable
subset sums across primes can rule out every proper degree.

Fallback: bounded Kronecker search, which decides both ways and produces
an explicit factor when the polynomial is reducible.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from ..errors import ConstantPolynomial
from .intpoly import IntPolynomial, lagrange_int

_PATTERN_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


# -- arithmetic over F_p -----------------------------------------------------

def _ptrim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a: List[int], b: List[int], m: List[int], p: int) -> List[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _pmod(_ptrim(out), m, p)


def _pmod(a: List[int], m: List[int], p: int) -> List[int]:
    a = list(a)
    inv = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        d = len(a) - len(m)
        for i, cm in enumerate(m):
            a[i + d] = (a[i + d] - c * cm) % p
        a = _ptrim(a)
        if not a:
            break
    return a


def _pgcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _pquo(a: List[int], b: List[int], p: int) -> List[int]:
    a = _ptrim(list(a))
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        d = len(a) - len(b)
        q[d] = c
        for i, cb in enumerate(b):
            a[i + d] = (a[i + d] - c * cb) % p
        a = _ptrim(a)
        if not a:
            break
    return q


def factor_degrees_mod_p(f: IntPolynomial, p: int) -> Optional[List[int]]:
    """Multiset of irreducible factor degrees of f mod p.

    Returns None when p divides the leading coefficient or f mod p is not
    squarefree (such primes carry no clean pattern information).
    """
    if f.leading % p == 0:
        return None
    fp = _ptrim([c % p for c in f.coeffs])
    dfp = _ptrim([(i * f[i]) % p for i in range(1, len(f.coeffs))])
    if not dfp or len(_pgcd(fp, dfp, p)) > 1:
        return None
    degrees: List[int] = []
    # distinct-degree factorization: strip factors of each degree d in turn
    work = list(fp)
    xq = [0, 1]  # x
    d = 0
    while len(work) - 1 > 0:
        d += 1
        if 2 * d > len(work) - 1:
            degrees.append(len(work) - 1)
            break
        xq = _ppowmod(xq, p, work, p)
        diff = _psub(xq, [0, 1], p)
        g = _pgcd(work, diff, p)
        if len(g) > 1:
            deg = len(g) - 1
            degrees.extend([d] * (deg // d))
            work = _pquo(work, g, p)
            xq = _pmod(xq, work, p)
    return sorted(degrees)


def _psub(a: List[int], b: List[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c % p
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _ptrim(out)


def _ppowmod(base: List[int], e: int, m: List[int], p: int) -> List[int]:
    out = [1]
    b = _pmod(list(base), m, p)
    while e:
        if e & 1:
            out = _pmulmod(out, b, m, p)
        b = _pmulmod(b, b, m, p)
        e >>= 1
    return out


def _subset_sums(degrees: List[int], n: int) -> int:
    """Bitmask of degrees achievable as sub-multiset sums."""
    mask = 1
    for d in degrees:
        mask |= mask << d
    return mask & ((1 << (n + 1)) - 1)


# -- Kronecker factor search --------------------------------------------------

def _divisors_signed(v: int) -> List[int]:
    v = abs(v)
    out = set()
    i = 1
    while i * i <= v:
        if v % i == 0:
            out.update((i, -i, v // i, -(v // i)))
        i += 1
    return sorted(out)


def kronecker_factor(f: IntPolynomial, max_degree: Optional[int] = None
                     ) -> Optional[IntPolynomial]:
    """A nonconstant proper factor of f over Z, or None if f is irreducible.

    Complete for primitive f: every candidate factor of degree d is an
    integer polynomial interpolating divisors of f at d+1 points, and all
    such candidates are enumerated.
    """
    f = f.primitive()
    n = f.degree
    if max_degree is None:
        max_degree = n // 2
    points = [0]
    k = 1
    while len(points) < max_degree + 1:
        points.extend((k, -k))
        k += 1
    points = points[:max_degree + 1]
    values = [f.eval_int(x) for x in points]
    for x, v in zip(points, values):
        if v == 0:
            return IntPolynomial([-x, 1])
    for d in range(1, max_degree + 1):
        xs = points[:d + 1]
        divisor_lists = [_divisors_signed(values[i]) for i in range(d + 1)]
        # candidate factor values at the sample points must divide f there
        idx = [0] * (d + 1)
        while True:
            vals = [divisor_lists[i][idx[i]] for i in range(d + 1)]
            try:
                cand = lagrange_int(list(zip(xs, vals)))
            except ValueError:
                cand = None
            if cand is not None and cand.degree == d and cand.primitive().divides(f):
                g = cand.primitive()
                if g.degree >= 1:
                    return g
            # advance the odometer
            pos = 0
            while pos <= d:
                idx[pos] += 1
                if idx[pos] < len(divisor_lists[pos]):
                    break
                idx[pos] = 0
                pos += 1
            if pos > d:
                break
    return None


# -- public decision -----------------------------------------------------------

def is_irreducible(f: IntPolynomial) -> bool:
    """Unconditional irreducibility of f over Q (content is ignored)."""
    if f.degree <= 0:
        raise ConstantPolynomial("irreducibility needs a nonconstant polynomial")
    f = f.primitive()
    n = f.degree
    if n == 1:
        return True
    if f.coeffs[0] == 0:
        return False  # x divides
    feasible = (1 << (n + 1)) - 1
    for p in _PATTERN_PRIMES:
        degs = factor_degrees_mod_p(f, p)
        if degs is None:
            continue
        feasible &= _subset_sums(degs, n)
        proper = feasible & ~1 & ~(1 << n)
        if proper == 0:
            return True
    return kronecker_factor(f) is None
