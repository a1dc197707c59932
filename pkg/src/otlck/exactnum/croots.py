"""Certified complex root isolation.

Approximate roots come from mpmath's polynomial root finder; the
certification is exact.  For approximations z_1..z_n of all n roots of a
squarefree integer polynomial g, the Weierstrass corrections

    W_i = g(z_i) / (lc * prod_{j != i} (z_i - z_j))

give discs D(z_i, n*|W_i|) whose union contains every root, and a disc
disjoint from all others contains exactly one root (Smith's theorem).
The z_i are snapped to Gaussian rationals, so |W_i|^2 and all the
disjointness checks are computed in exact Fraction arithmetic; no
floating-point result is ever trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath
from mpmath import mp

from ..errors import PrecisionExhausted, ZeroPolynomial
from .interval import Box, CertifiedInterval, sqrt_bounds
from .intpoly import IntPolynomial
from .sturm import RealAlgebraic, isolate_real_roots

_DPS_START = 30
_DPS_CAP = 2500


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _approx_roots(g: IntPolynomial, dps: int) -> Optional[List[Tuple[Fraction, Fraction]]]:
    out = []
    with mp.workdps(dps):
        coeffs = [mp.mpf(c) for c in reversed(g.coeffs)]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=120)
        except mp.NoConvergence:
            return None
        for r in roots:
            z = mp.mpc(r)
            out.append((_mpf_to_fraction(z.real), _mpf_to_fraction(z.imag)))
    return out


def _certify(g: IntPolynomial, approx: List[Tuple[Fraction, Fraction]]
             ) -> Optional[List[Tuple[Fraction, Fraction, Fraction]]]:
    """Exact Smith radii; returns (re, im, radius_upper) or None if degenerate."""
    n = g.degree
    lc2 = Fraction(g.leading) ** 2
    out = []
    for i, (re, im) in enumerate(approx):
        vr, vi = g.eval_gaussian(re, im)
        num = vr * vr + vi * vi
        den = lc2
        for j, (re2, im2) in enumerate(approx):
            if j == i:
                continue
            dr, di = re - re2, im - im2
            d2 = dr * dr + di * di
            if d2 == 0:
                return None  # coincident approximations; escalate
            den *= d2
        r2 = Fraction(n * n) * num / den
        r_up = sqrt_bounds(r2, 64).hi
        out.append((re, im, r_up))
    return out


def _boxes_disjoint(a: Tuple[Fraction, Fraction, Fraction],
                    b: Tuple[Fraction, Fraction, Fraction]) -> bool:
    sep = a[2] + b[2]
    return abs(a[0] - b[0]) > sep or abs(a[1] - b[1]) > sep


class _CertifiedComplexRoots:
    """Shared certified state for the non-real roots of one squarefree poly."""

    def __init__(self, poly: IntPolynomial, n_real: int):
        self.poly = poly
        self.n_real = n_real
        self.t = (poly.degree - n_real) // 2
        self.dps = _DPS_START
        self.boxes: List[Box] = []
        if self.t:
            self._recertify(initial=True)

    def _attempt(self) -> Optional[List[Box]]:
        approx = _approx_roots(self.poly, self.dps)
        if approx is None:
            return None
        discs = _certify(self.poly, approx)
        if discs is None:
            return None
        for i in range(len(discs)):
            for j in range(i + 1, len(discs)):
                if not _boxes_disjoint(discs[i], discs[j]):
                    return None
        upper = [d for d in discs if d[1] > d[2]]
        lower = [d for d in discs if -d[1] > d[2]]
        if len(upper) != self.t or len(lower) != self.t:
            return None
        boxes = [Box(CertifiedInterval(re - r, re + r), CertifiedInterval(im - r, im + r))
                 for re, im, r in upper]
        boxes.sort(key=lambda b: (b.re.lo, b.im.lo))
        return boxes

    def _recertify(self, initial: bool = False) -> None:
        while True:
            got = self._attempt()
            if got is not None:
                if initial:
                    self.boxes = got
                    return
                matched = self._match(got)
                if matched is not None:
                    self.boxes = matched
                    return
            self.dps *= 2
            if self.dps > _DPS_CAP:
                raise PrecisionExhausted(
                    f"complex root certification for {self.poly} exceeded "
                    f"{_DPS_CAP} digits")

    def _match(self, new: List[Box]) -> Optional[List[Box]]:
        """Pair each old box with the unique new box inside it."""
        out = []
        for old in self.boxes:
            inner = [b for b in new if old.contains_box(b)]
            if len(inner) != 1:
                return None
            out.append(inner[0])
        return out

    def refine(self) -> None:
        self.dps *= 2
        if self.dps > _DPS_CAP:
            raise PrecisionExhausted("complex refinement exceeded the digit cap")
        self._recertify()


@dataclass
class ComplexAlgebraic:
    """One upper-half-plane root of a squarefree integer polynomial.

    The box always contains exactly one root of `poly`; refinement only
    ever shrinks inside previously reported enclosures.
    """

    poly: IntPolynomial
    index: int
    _shared: _CertifiedComplexRoots

    def box(self) -> Box:
        return self._shared.boxes[self.index]

    def refine_to(self, width: Fraction) -> "ComplexAlgebraic":
        while self.box().width() > width:
            self._shared.refine()
        return self

    def refine_bits(self, bits: int) -> "ComplexAlgebraic":
        return self.refine_to(Fraction(1, 1 << bits))

    def abs_sq(self) -> CertifiedInterval:
        return self.box().abs_sq()

    def approx(self) -> complex:
        b = self.box()
        return complex(float(b.re.mid), float(b.im.mid))

    def __repr__(self):
        return f"ComplexAlgebraic({self.approx():.6g})"


def isolate_roots(f: IntPolynomial
                  ) -> Tuple[List[RealAlgebraic], List[ComplexAlgebraic]]:
    """All real roots (ascending) and one certified representative per
    conjugate pair (upper half-plane, ordered by enclosure (Re, Im))."""
    if f.is_zero:
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    g = f.squarefree_part()
    reals = isolate_real_roots(g)
    if (g.degree - len(reals)) % 2:
        raise AssertionError("real/complex root count mismatch")
    shared = _CertifiedComplexRoots(g, len(reals))
    pairs = [ComplexAlgebraic(g, i, shared) for i in range(shared.t)]
    _sort_pairs(pairs)
    return reals, pairs


def _sort_pairs(pairs: List[ComplexAlgebraic], budget: int = 7) -> None:
    """Order by (Re, Im).  Enclosures are refined until real parts separate;
    if they still overlap, imaginary parts (distinct for equal Re) decide."""
    if len(pairs) <= 1:
        return

    def less(a: ComplexAlgebraic, b: ComplexAlgebraic) -> bool:
        for _ in range(budget):
            ba, bb = a.box(), b.box()
            if not ba.re.intersects(bb.re):
                return ba.re.hi < bb.re.lo
            if not ba.im.intersects(bb.im):
                return ba.im.hi < bb.im.lo
            a._shared.refine()
        ba, bb = a.box(), b.box()
        return (ba.re.mid, ba.im.mid) < (bb.re.mid, bb.im.mid)

    # insertion sort with the certified comparator; lists are tiny
    for i in range(1, len(pairs)):
        j = i
        while j > 0 and less(pairs[j], pairs[j - 1]):
            pairs[j], pairs[j - 1] = pairs[j - 1], pairs[j]
            j -= 1

    # reorder the shared box list to match, so refinement matching stays aligned
    shared = pairs[0]._shared
    shared.boxes = [p.box() for p in pairs]
    for k, p in enumerate(pairs):
        p.index = k
