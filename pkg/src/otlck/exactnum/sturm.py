"""Sturm sequences, exact real-root counting, and isolated real algebraic numbers.

The Sturm chain is computed over Q and rescaled to primitive integer
polynomials (positive scaling only, so sign patterns are preserved).
Root counts are therefore exact; every interval endpoint used is a
rational non-root of the defining polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from ..errors import ZeroPolynomial
from .interval import CertifiedInterval
from .intpoly import IntPolynomial, qdivmod


class SturmChain:
    """Sturm chain of a squarefree integer polynomial, with exact counting."""

    def __init__(self, poly: IntPolynomial):
        if poly.is_zero:
            raise ZeroPolynomial("Sturm chain of the zero polynomial")
        self.poly = poly
        chain = [poly.to_q(), poly.derivative().to_q()]
        while chain[-1]:
            r = qdivmod(chain[-2], chain[-1])[1]
            if not r:
                break
            chain.append([-c for c in r])
        self.chain = [IntPolynomial.from_q_signed(p) for p in chain if p]

    def variations(self, x: Fraction) -> int:
        signs = []
        for p in self.chain:
            v = p.eval_fraction(x)
            if v:
                signs.append(1 if v > 0 else -1)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_roots(self, lo: Fraction, hi: Fraction) -> int:
        """Number of distinct real roots in (lo, hi]; endpoints must avoid roots of f."""
        return self.variations(lo) - self.variations(hi)


def cauchy_root_bound(f: IntPolynomial) -> Fraction:
    """All complex roots have modulus < this bound."""
    lc = abs(f.leading)
    m = max((abs(c) for c in f.coeffs[:-1]), default=0)
    return Fraction(1) + Fraction(m, lc)


def _nonroot_point(f: IntPolynomial, lo: Fraction, hi: Fraction) -> Fraction:
    """A point strictly inside (lo, hi) that is not a root of f."""
    step = hi - lo
    k = 2
    while True:
        x = lo + step / k
        if f.eval_fraction(x) != 0:
            return x
        k += 1


@dataclass
class RealAlgebraic:
    """A real root of a squarefree integer polynomial, isolated in (lo, hi).

    The isolating interval always has non-root rational endpoints and
    contains exactly one root of `poly`.  Refinement narrows the interval
    in place and never leaves a previously reported enclosure.
    """

    poly: IntPolynomial
    lo: Fraction
    hi: Fraction
    _chain: SturmChain = field(repr=False)

    def interval(self) -> CertifiedInterval:
        return CertifiedInterval(self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine_once(self) -> None:
        mid = _nonroot_point(self.poly, self.lo, self.hi)
        if self._chain.count_roots(self.lo, mid) == 1:
            self.hi = mid
        else:
            self.lo = mid

    def refine_to(self, width: Fraction) -> "RealAlgebraic":
        while self.width > width:
            self.refine_once()
        return self

    def refine_bits(self, bits: int) -> "RealAlgebraic":
        return self.refine_to(Fraction(1, 1 << bits))

    def compare_rational(self, q: Fraction) -> int:
        """Exact sign of (root - q)."""
        q = Fraction(q)
        if self.poly.eval_fraction(q) == 0 and self.lo < q < self.hi:
            return 0
        while self.lo < q < self.hi:
            self.refine_once()
        if q <= self.lo:
            return 1
        return -1

    def sign(self) -> int:
        return self.compare_rational(Fraction(0))

    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return f"RealAlgebraic({self.approx():.6g} in ({self.lo}, {self.hi}))"


def isolate_real_roots(f: IntPolynomial) -> List[RealAlgebraic]:
    """All real roots of the squarefree part of f, in ascending order."""
    if f.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    g = f.squarefree_part()
    if g.degree <= 0:
        return []
    chain = SturmChain(g)
    bound = cauchy_root_bound(g)
    lo, hi = -bound, bound
    # Cauchy bound is strict, so +-bound are never roots
    total = chain.count_roots(lo, hi)
    out: List[RealAlgebraic] = []
    stack: List[Tuple[Fraction, Fraction, int]] = [(lo, hi, total)]
    while stack:
        a, b, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append(RealAlgebraic(g, a, b, chain))
            continue
        mid = _nonroot_point(g, a, b)
        left = chain.count_roots(a, mid)
        stack.append((mid, b, cnt - left))
        stack.append((a, mid, left))
    out.sort(key=lambda r: r.lo)
    assert len(out) == total
    return out


def count_real_roots(f: IntPolynomial) -> int:
    """Exact number of distinct real roots of f."""
    g = f.squarefree_part()
    if g.degree <= 0:
        return 0
    chain = SturmChain(g)
    bound = cauchy_root_bound(g)
    return chain.count_roots(-bound, bound)
