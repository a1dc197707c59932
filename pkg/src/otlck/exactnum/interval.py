"""Certified interval arithmetic with exact rational endpoints.

All interval endpoints are `fractions.Fraction`, so ring operations
(+, -, *, /) are exact set-images and never round.  Transcendental
functions (log, exp, atan2) are delegated to mpmath's outward-rounded
interval context and the dyadic endpoints are pulled back into exact
rationals, so every enclosure produced here is sound.

Sign and comparison queries answer only when the interval proves them;
an interval straddling the query point answers None, never a guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from mpmath import iv

Rat = Union[int, Fraction]


def _endpoint_to_fraction(t) -> Fraction:
    # mpmath endpoint tuple (sign, man, exp, bc); man == 0 means 0 or inf
    sign, man, exp, _ = t
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise OverflowError("infinite interval endpoint")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _iv_to_interval(x) -> "CertifiedInterval":
    lo, hi = x._mpi_
    return CertifiedInterval(_endpoint_to_fraction(lo), _endpoint_to_fraction(hi))


class _workprec:
    """Temporarily set mpmath's interval context precision."""

    def __init__(self, bits: int):
        self.bits = bits

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = self.bits
        return iv

    def __exit__(self, *exc):
        iv.prec = self.saved
        return False


def _to_iv(q: Fraction):
    # int construction rounds outward in the iv context; division is outward
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


@dataclass(frozen=True)
class CertifiedInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def exact(q: Rat) -> "CertifiedInterval":
        q = Fraction(q)
        return CertifiedInterval(q, q)

    @staticmethod
    def hull(items: Iterable["CertifiedInterval"]) -> "CertifiedInterval":
        items = list(items)
        return CertifiedInterval(min(i.lo for i in items), max(i.hi for i in items))

    # -- queries -----------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: Rat) -> bool:
        q = Fraction(q)
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "CertifiedInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> Optional[int]:
        """+1 / -1 when provable, 0 for the exact zero point, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def compare(self, q: Rat) -> Optional[int]:
        """Certified comparison against a rational: -1, 0 (exact), +1 or None."""
        q = Fraction(q)
        if self.lo > q:
            return 1
        if self.hi < q:
            return -1
        if self.lo == self.hi == q:
            return 0
        return None

    # -- exact ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return CertifiedInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        prods = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return CertifiedInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.contains(0):
            raise ZeroDivisionError("interval denominator contains 0")
        inv = CertifiedInterval(1 / other.hi, 1 / other.lo)
        return self * inv

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def abs(self) -> "CertifiedInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return CertifiedInterval(Fraction(0), max(-self.lo, self.hi))

    def square(self) -> "CertifiedInterval":
        a = self.abs()
        return CertifiedInterval(a.lo * a.lo, a.hi * a.hi)

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"

    def approx(self) -> float:
        return float(self.mid)


def _coerce(x) -> CertifiedInterval:
    if isinstance(x, CertifiedInterval):
        return x
    if isinstance(x, (int, Fraction)):
        return CertifiedInterval.exact(x)
    raise TypeError(f"cannot coerce {type(x)} to CertifiedInterval")


# -- exact square-root bounds ------------------------------------------------

def sqrt_bounds(q: Rat, bits: int = 64) -> CertifiedInterval:
    """Enclosure of sqrt(q) with about `bits` fractional bits, q >= 0."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of a negative rational")
    if q == 0:
        return CertifiedInterval.exact(0)
    scale = 1 << bits
    # sqrt(n/d) = sqrt(n*d)/d; bound isqrt with one ulp of slack
    n = q.numerator * q.denominator * scale * scale
    r = math.isqrt(n)
    lo = Fraction(r, q.denominator * scale)
    hi = Fraction(r + 1, q.denominator * scale)
    return CertifiedInterval(lo, hi)


def sqrt_interval(x: CertifiedInterval, bits: int = 64) -> CertifiedInterval:
    if x.lo < 0:
        raise ValueError("sqrt of an interval reaching below 0")
    return CertifiedInterval(sqrt_bounds(x.lo, bits).lo, sqrt_bounds(x.hi, bits).hi)


def is_perfect_square(q: Fraction) -> Optional[Fraction]:
    """Exact rational square root of q, or None."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


# -- transcendental enclosures (mpmath-backed, outward rounded) --------------

def log_interval(x: CertifiedInterval, bits: int = 64) -> CertifiedInterval:
    if x.lo <= 0:
        raise ValueError("log of an interval reaching 0 or below")
    with _workprec(bits):
        return CertifiedInterval(
            _iv_to_interval(iv.log(_to_iv(x.lo))).lo,
            _iv_to_interval(iv.log(_to_iv(x.hi))).hi,
        )


def exp_interval(x: CertifiedInterval, bits: int = 64) -> CertifiedInterval:
    with _workprec(bits):
        return CertifiedInterval(
            _iv_to_interval(iv.exp(_to_iv(x.lo))).lo,
            _iv_to_interval(iv.exp(_to_iv(x.hi))).hi,
        )


def pi_interval(bits: int = 64) -> CertifiedInterval:
    with _workprec(bits):
        return _iv_to_interval(iv.pi)


def atan2_interval(y: CertifiedInterval, x: CertifiedInterval,
                   bits: int = 64) -> CertifiedInterval:
    """Enclosure of atan2 over the box; sound but wide across the branch cut."""
    with _workprec(bits):
        ylo, yhi = _to_iv(y.lo), _to_iv(y.hi)
        xlo, xhi = _to_iv(x.lo), _to_iv(x.hi)
        yy = iv.mpf([ylo.a, yhi.b])
        xx = iv.mpf([xlo.a, xhi.b])
        return _iv_to_interval(iv.atan2(yy, xx))


# -- complex boxes -----------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Axis-aligned rectangle in the complex plane with interval sides."""

    re: CertifiedInterval
    im: CertifiedInterval

    @staticmethod
    def exact(re: Rat, im: Rat = 0) -> "Box":
        return Box(CertifiedInterval.exact(re), CertifiedInterval.exact(im))

    def __add__(self, other):
        other = _coerce_box(other)
        return Box(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Box(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_coerce_box(other))

    def __mul__(self, other):
        other = _coerce_box(other)
        return Box(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> "Box":
        return Box(self.re, -self.im)

    def abs_sq(self) -> CertifiedInterval:
        return self.re.square() + self.im.square()

    def contains(self, re: Rat, im: Rat) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def contains_box(self, other: "Box") -> bool:
        return (self.re.contains_interval(other.re)
                and self.im.contains_interval(other.im))

    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def arg(self, bits: int = 64) -> CertifiedInterval:
        return atan2_interval(self.im, self.re, bits)

    def __repr__(self):
        return f"Box({self.re} + {self.im} i)"


def _coerce_box(x) -> Box:
    if isinstance(x, Box):
        return x
    if isinstance(x, CertifiedInterval):
        return Box(x, CertifiedInterval.exact(0))
    if isinstance(x, (int, Fraction)):
        return Box.exact(x)
    raise TypeError(f"cannot coerce {type(x)} to Box")
