"""Exact univariate polynomials over the integers and rationals.

Coefficients are stored lowest degree first.  `IntPolynomial` carries
arbitrary-precision integer coefficients; rational-coefficient work
(Euclidean division, minimal polynomials, characteristic polynomials)
uses plain lists of `Fraction` handled by the q* helpers below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from ..errors import ZeroPolynomial
from .interval import Box, CertifiedInterval

QPoly = List[Fraction]


# ---------------------------------------------------------------------------
# rational-coefficient helpers
# ---------------------------------------------------------------------------

def qtrim(p: Sequence[Fraction]) -> QPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def qadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> QPoly:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return qtrim(out)


def qneg(a: Sequence[Fraction]) -> QPoly:
    return [-c for c in a]


def qsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> QPoly:
    return qadd(a, qneg(b))


def qmul(a: Sequence[Fraction], b: Sequence[Fraction]) -> QPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return qtrim(out)


def qscale(a: Sequence[Fraction], c: Fraction) -> QPoly:
    return qtrim([x * c for x in a])


def qdivmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[QPoly, QPoly]:
    a, b = qtrim(a), qtrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b):
        c = r[-1] / lb
        d = len(r) - len(b)
        q[d] = c
        for i, cb in enumerate(b):
            r[i + d] -= c * cb
        r = qtrim(r)
        if not r:
            break
    return qtrim(q), qtrim(r)


def qeval(a: Sequence[Fraction], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(list(a)):
        out = out * x + c
    return out


def qmonic(a: Sequence[Fraction]) -> QPoly:
    a = qtrim(a)
    if not a:
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    return [c / a[-1] for c in a]


def qgcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> QPoly:
    a, b = qtrim(a), qtrim(b)
    while b:
        a, b = b, qdivmod(a, b)[1]
    return qmonic(a) if a else []


def qderivative(a: Sequence[Fraction]) -> QPoly:
    return qtrim([a[i] * i for i in range(1, len(a))])


def qpow_mod(base: Sequence[Fraction], e: int, mod: Sequence[Fraction]) -> QPoly:
    out: QPoly = [Fraction(1)]
    b = qdivmod(base, mod)[1]
    while e:
        if e & 1:
            out = qdivmod(qmul(out, b), mod)[1]
        b = qdivmod(qmul(b, b), mod)[1]
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, coefficients lowest degree first."""

    coeffs: Tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- basics -------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial(x // c for x in self.coeffs)

    # -- ring ops -----------------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[i] - other[i] for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPolynomial":
        out = IntPolynomial([1])
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * self.coeffs[i] for i in range(1, len(self.coeffs)))

    # -- evaluation ----------------------------------------------------------

    def eval_int(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_fraction(self, x: Fraction) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_interval(self, x: CertifiedInterval) -> CertifiedInterval:
        out = CertifiedInterval.exact(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_box(self, z: Box) -> Box:
        out = Box.exact(0)
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def eval_gaussian(self, re: Fraction, im: Fraction) -> Tuple[Fraction, Fraction]:
        """Exact evaluation at the Gaussian rational re + im*i."""
        outr, outi = Fraction(0), Fraction(0)
        for c in reversed(self.coeffs):
            outr, outi = outr * re - outi * im + c, outr * im + outi * re
        return outr, outi

    # -- conversions ----------------------------------------------------------

    def to_q(self) -> QPoly:
        return [Fraction(c) for c in self.coeffs]

    @staticmethod
    def from_q(p: Sequence[Fraction]) -> "IntPolynomial":
        """Clear denominators; returns the primitive positive-lc multiple."""
        p = qtrim(list(p))
        if not p:
            return IntPolynomial([])
        den = math.lcm(*(c.denominator for c in p))
        return IntPolynomial(int(c * den) for c in p).primitive()

    @staticmethod
    def from_q_signed(p: Sequence[Fraction]) -> "IntPolynomial":
        """Clear denominators by a positive scalar only (sign pattern kept)."""
        p = qtrim(list(p))
        if not p:
            return IntPolynomial([])
        den = math.lcm(*(c.denominator for c in p))
        out = IntPolynomial(int(c * den) for c in p)
        g = out.content()
        return IntPolynomial(c // g for c in out.coeffs)

    def shift_compose_neg(self) -> "IntPolynomial":
        """f(-x)."""
        return IntPolynomial(c if i % 2 == 0 else -c
                             for i, c in enumerate(self.coeffs))

    def reverse(self) -> "IntPolynomial":
        """x^deg * f(1/x)."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def __repr__(self):
        if self.is_zero:
            return "IntPolynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "IntPolynomial(" + " + ".join(terms) + ")"

    # -- structure ------------------------------------------------------------

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        g = qgcd(self.to_q(), other.to_q())
        return IntPolynomial.from_q(g) if g else IntPolynomial([])

    def squarefree_part(self) -> "IntPolynomial":
        if self.is_zero:
            raise ZeroPolynomial("squarefree part of zero polynomial")
        if self.degree == 0:
            return IntPolynomial([1])
        g = self.gcd(self.derivative())
        if g.degree == 0:
            return self.primitive()
        q, r = qdivmod(self.to_q(), g.to_q())
        assert not r
        return IntPolynomial.from_q(q)

    def squarefree_decomposition(self) -> List[Tuple["IntPolynomial", int]]:
        """Yun's algorithm: returns [(g_i, i)] with f ~ prod g_i^i, g_i squarefree."""
        f = self.primitive()
        if f.degree <= 0:
            return []
        # run over Q: content normalization mid-recursion breaks multiplicities
        fq = qmonic(f.to_q())
        fpq = qderivative(fq)
        a = qgcd(fq, fpq)
        b = qdivmod(fq, a)[0]
        d = qsub(qdivmod(fpq, a)[0], qderivative(b))
        out: List[Tuple[IntPolynomial, int]] = []
        i = 1
        while len(b) - 1 > 0:
            g = qgcd(b, d) if qtrim(list(d)) else qmonic(b)
            if len(g) - 1 > 0:
                out.append((IntPolynomial.from_q(g), i))
            b = qdivmod(b, g)[0]
            d = qsub(qdivmod(d, g)[0], qderivative(b))
            i += 1
        return out

    def divides(self, other: "IntPolynomial") -> bool:
        if self.is_zero:
            return other.is_zero
        _, r = qdivmod(other.to_q(), self.to_q())
        return not r


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def qresultant(f: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
    """Resultant over Q via the Euclidean remainder sequence."""
    f, g = qtrim(list(f)), qtrim(list(g))
    if not f or not g:
        return Fraction(0)
    res = Fraction(1)
    while True:
        df, dg = len(f) - 1, len(g) - 1
        if dg == 0:
            return res * g[-1] ** df
        if df < dg:
            if df % 2 == 1 and dg % 2 == 1:
                res = -res
            f, g = g, f
            continue
        r = qdivmod(f, g)[1]
        dr = len(r) - 1
        if not r:
            return Fraction(0)
        if df % 2 == 1 and dg % 2 == 1:
            res = -res
        res *= g[-1] ** (df - dr)
        f, g = g, r


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    r = qresultant(f.to_q(), g.to_q())
    assert r.denominator == 1
    return r.numerator


def discriminant(f: IntPolynomial) -> Fraction:
    n = f.degree
    if n < 1:
        raise ZeroPolynomial("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return Fraction(sign * r, f.leading)


# ---------------------------------------------------------------------------
# interpolation (used by the composed-product resultant evaluations)
# ---------------------------------------------------------------------------

def lagrange_int(points: Sequence[Tuple[int, int]]) -> IntPolynomial:
    """Integer polynomial through the points; raises if non-integral."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    # Newton's divided differences, exact
    n = len(points)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly: QPoly = []
    for j in range(n - 1, -1, -1):
        poly = qadd(qmul(poly, [-xs[j], Fraction(1)]), [coef[j]])
    poly = qtrim(poly)
    out = []
    for c in poly:
        if c.denominator != 1:
            raise ValueError("interpolant is not an integer polynomial")
        out.append(c.numerator)
    return IntPolynomial(out)


# ---------------------------------------------------------------------------
# exact k-th roots of monic rational polynomials
# ---------------------------------------------------------------------------

def qpoly_kth_root(p: Sequence[Fraction], k: int) -> QPoly:
    """Monic Q with Q^k = p; p must be monic of degree divisible by k."""
    p = qtrim(list(p))
    if not p or p[-1] != 1:
        raise ValueError("k-th root requires a monic polynomial")
    dp = len(p) - 1
    if dp % k:
        raise ValueError("degree not divisible by k")
    m = dp // k
    q: QPoly = [Fraction(0)] * m + [Fraction(1)]
    for _ in range(m + 1):
        diff = qsub(p, _qpow(q, k))
        if not diff:
            return q
        d = len(diff) - 1
        pos = d - (k - 1) * m
        if pos < 0:
            break
        q = qadd(q, _monomial(pos, diff[-1] / k))
    if qsub(p, _qpow(q, k)):
        raise ValueError("polynomial has no exact k-th root")
    return q


def _qpow(a: QPoly, e: int) -> QPoly:
    out: QPoly = [Fraction(1)]
    b = list(a)
    while e:
        if e & 1:
            out = qmul(out, b)
        b = qmul(b, b)
        e >>= 1
    return out


def _monomial(deg: int, c: Fraction) -> QPoly:
    return [Fraction(0)] * deg + [c]
