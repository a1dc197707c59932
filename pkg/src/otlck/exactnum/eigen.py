"""Certified eigenvalue-magnitude profiles of rational matrices.

Real eigenvalues are isolated by Sturm sequences, complex pairs by
certified discs; each |lambda| is compared against 1 with an exact
tie-break: a magnitude can only equal 1 if the composed-product
polynomial of the characteristic polynomial has 1 as a rational root,
and root identification then decides equality unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Literal

from ..errors import PrecisionExhausted
from .composed import RealRootIdentifier, composed_product_poly
from .croots import isolate_roots
from .interval import CertifiedInterval, sqrt_interval
from .intpoly import IntPolynomial

Status = Literal["greater_than_one", "less_than_one", "equal_one", "undecided"]


@dataclass
class MagnitudeEntry:
    """Enclosure of |lambda| for one eigenvalue (listed with multiplicity)."""

    magnitude: CertifiedInterval
    status: Status
    is_real: bool
    multiplicity: int


def eigenvalue_magnitude_profile(m, precision: int = 64,
                                 cap: int = 4096) -> List[MagnitudeEntry]:
    """Certified |lambda| enclosures for all eigenvalues of a square matrix.

    Every entry's status (vs. 1) is decided exactly; `precision` asks for
    enclosure width <= 2^-precision, escalated up to `cap` bits.
    """
    from ..linalg import charpoly
    chi = IntPolynomial.from_q(charpoly(m))
    entries: List[MagnitudeEntry] = []
    for factor, mult in chi.squarefree_decomposition():
        reals, pairs = isolate_roots(factor)
        identifier = None
        needs_exact = factor.gcd(factor.reverse()).degree > 0
        for r in reals:
            r.refine_bits(precision)
            status = _real_status(r)
            mag = r.interval().abs()
            for _ in range(mult):
                entries.append(MagnitudeEntry(mag, status, True, mult))
        for p in pairs:
            status, mag_sq = _pair_status(p, factor, precision, cap,
                                          needs_exact)
            mag = sqrt_interval(mag_sq, precision + 8)
            for _ in range(2 * mult):
                entries.append(MagnitudeEntry(mag, status, False, mult))
    entries.sort(key=lambda e: (e.magnitude.lo, e.magnitude.hi), reverse=True)
    return entries


def _real_status(r) -> Status:
    c1 = r.compare_rational(Fraction(1))
    if c1 == 0:
        return "equal_one"
    cm1 = r.compare_rational(Fraction(-1))
    if cm1 == 0:
        return "equal_one"
    if cm1 > 0 and c1 < 0:
        return "less_than_one"
    return "greater_than_one"


def _pair_status(p, factor: IntPolynomial, precision: int, cap: int,
                 needs_exact: bool):
    bits = max(precision, 16)
    while True:
        p.refine_bits(bits)
        mag_sq = p.abs_sq()
        cmp = mag_sq.compare(1)
        if cmp == 1:
            return "greater_than_one", mag_sq
        if cmp == -1:
            return "less_than_one", mag_sq
        if needs_exact:
            # |lambda|^2 is a root of the pair-composed polynomial; decide
            # equality with 1 by exact identification
            ident = RealRootIdentifier(composed_product_poly(factor, 2))
            one_idx = ident.rational_root_index(Fraction(1))
            if one_idx is None:
                needs_exact = False  # 1 is not a root; refinement will separate
            else:
                idx = ident.identify(lambda b: _abs_sq_at(p, b))
                if idx == one_idx:
                    return "equal_one", p.abs_sq()
                needs_exact = False
        bits *= 2
        if bits > cap:
            raise PrecisionExhausted(
                "magnitude comparison with 1 undecided at the bit cap")


def _abs_sq_at(p, bits: int) -> CertifiedInterval:
    p.refine_bits(bits)
    return p.abs_sq()
