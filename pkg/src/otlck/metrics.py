"""Arithmetic existence tests for LCK and pluriclosed metrics.

Everything here is exactly decided.  Magnitudes |sigma_{s+i}(u)|^2 and
the products sigma_j(u)|sigma_{s+j}(u)|^2 are algebraic numbers that
are roots of composed-product polynomials of u's minimal polynomial, so
equality questions reduce to identifying isolated roots; no precision
threshold is ever the deciding step.

The LCK condition: all complex-embedding magnitudes agree for every
generator (magnitudes are multiplicative, so generators suffice).
The pluriclosed condition for s <= t, after a relabeling pi of the real
embeddings: sigma_pi(j)(u)|sigma_{s+j}(u)|^2 = 1 for j <= s and
|sigma_{s+k}(u)| = 1 for k > s.  The pairing search runs over the s!
relabelings (capped at s <= 4) and must be uniform across generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from . import linalg, numfield
from .errors import SignatureViolation
from .exactnum.composed import RealRootIdentifier, composed_product_poly
from .exactnum.interval import CertifiedInterval
from .exactnum.intpoly import IntPolynomial
from .numfield import FieldElement, NumberField
from .unitlat import UnitGroup

PAIRING_CAP = 4

_identifier_cache: Dict[Tuple[Tuple[int, ...], int], RealRootIdentifier] = {}


def _identifier(poly: IntPolynomial, arity: int) -> RealRootIdentifier:
    key = (poly.coeffs, arity)
    if key not in _identifier_cache:
        _identifier_cache[key] = RealRootIdentifier(
            composed_product_poly(poly, arity))
    return _identifier_cache[key]


@dataclass
class MagnitudeProfile:
    """|sigma_{s+i}(u)|^2 identified among the isolated roots of the
    pair-composed polynomial of u's minimal polynomial."""

    unit: FieldElement
    min_poly: IntPolynomial
    root_indices: List[int]
    identifier: RealRootIdentifier

    def all_equal(self) -> bool:
        return len(set(self.root_indices)) <= 1

    def magnitude_is_one(self, k: int) -> bool:
        one = self.identifier.rational_root_index(Fraction(1))
        return one is not None and self.root_indices[k] == one


def _magnitude_is_one_fast(u: FieldElement, k: int) -> bool:
    """Exact |sigma_{s+k}(u)| = 1 with an interval fast path for inequality."""
    for bits in (48, 128):
        sq = numfield.embedding_magnitude_sq(u, k, bits)
        if not sq.contains(1):
            return False
    return magnitude_profile(u).magnitude_is_one(k - 1)


def magnitude_profile(u: FieldElement) -> MagnitudeProfile:
    field = u.field
    mp = numfield.min_poly_int(u)
    ident = _identifier(mp, 2)
    indices = []
    for k in range(1, field.t + 1):
        def enclose(bits: int, _k=k) -> CertifiedInterval:
            return numfield.embedding_magnitude_sq(u, _k, bits)
        indices.append(ident.identify(enclose))
    return MagnitudeProfile(u, mp, indices, ident)


def lck_condition(group: UnitGroup) -> bool:
    """Exact: |sigma_{s+1}(u)| = ... = |sigma_{s+t}(u)| for all generators
    (hence for the whole group, by multiplicativity)."""
    field = group.field
    if field.t < 1:
        raise SignatureViolation("LCK condition needs t >= 1")
    if field.t == 1:
        return True
    return all(lck_condition_element(g) for g in group.generators)


def lck_condition_element(u: FieldElement) -> bool:
    if u.field.t <= 1:
        return True
    # certified interval separation settles inequality without composed
    # products; only candidates for genuine equality take the exact route
    t = u.field.t
    for bits in (48, 128):
        sqs = [numfield.embedding_magnitude_sq(u, k, bits)
               for k in range(1, t + 1)]
        if any(not sqs[i].intersects(sqs[j])
               for i in range(t) for j in range(i + 1, t)):
            return False
    return magnitude_profile(u).all_equal()


PluriclosedVerdict = Literal["holds", "fails", "cap-exceeded"]


@dataclass
class PluriclosedResult:
    verdict: PluriclosedVerdict
    pairing: Optional[Tuple[int, ...]] = None
    counterexample: str = ""
    cap: int = PAIRING_CAP


def _triple_product_is_one(u: FieldElement, real_index: int,
                           complex_index: int) -> bool:
    """Exactly decide sigma_{real}(u) |sigma_{s+complex}(u)|^2 = 1."""
    def enclose(bits: int) -> CertifiedInterval:
        re = numfield.embed_element(u, real_index, bits)
        sq = numfield.embedding_magnitude_sq(u, complex_index, bits)
        return re * sq

    for bits in (48, 128):
        if not enclose(bits).contains(1):
            return False
    mp = numfield.min_poly_int(u)
    ident = _identifier(mp, 3)
    one = ident.rational_root_index(Fraction(1))
    if one is None:
        return False
    return ident.identify(enclose) == one


def pluriclosed_condition(group: UnitGroup) -> PluriclosedResult:
    """Search the s! relabelings of the real embeddings for one that makes
    every generator satisfy the pluriclosed identities, exactly."""
    field = group.field
    s, t = field.signature
    if s > t:
        raise SignatureViolation(
            f"pluriclosed condition requires s <= t, got ({s},{t})")
    if s > PAIRING_CAP:
        return PluriclosedResult("cap-exceeded",
                                 counterexample=f"s = {s} exceeds the "
                                 f"pairing-search cap {PAIRING_CAP}")
    # |sigma_{s+k}(u)| = 1 family for k > s (empty when s = t)
    for g in group.generators:
        for k in range(s + 1, t + 1):
            if not _magnitude_is_one_fast(g, k):
                return PluriclosedResult(
                    "fails",
                    counterexample=f"|sigma_{s + k}(u)| != 1 for a generator")
    for pairing in itertools.permutations(range(1, s + 1)):
        if all(_triple_product_is_one(g, pairing[j], j + 1)
               for g in group.generators for j in range(s)):
            return PluriclosedResult("holds", pairing)
    return PluriclosedResult(
        "fails", counterexample="no relabeling satisfies "
        "sigma_pi(j)(u)|sigma_{s+j}(u)|^2 = 1")


def pluriclosed_condition_element(u: FieldElement) -> bool:
    field = u.field
    s, t = field.signature
    if s > t or s > PAIRING_CAP:
        return False
    for k in range(s + 1, t + 1):
        if not _magnitude_is_one_fast(u, k):
            return False
    for pairing in itertools.permutations(range(1, s + 1)):
        if all(_triple_product_is_one(u, pairing[j], j + 1)
               for j in range(s)):
            return True
    return False


# ---------------------------------------------------------------------------
# bounded unit search and the rank-bound probes
# ---------------------------------------------------------------------------

def bounded_unit_search(field: NumberField, bound: int,
                        totally_positive: bool = True) -> List[FieldElement]:
    """All elements of Z[alpha] with power-basis coordinates in [-B, B] that
    are units (norm +-1), optionally filtered to totally positive ones.

    Norms go through exact resultants: Norm(g(alpha)) = Res(f, g) for the
    monic minimal polynomial f."""
    n = field.degree
    f = field.min_poly.coeffs
    out = []

    def mult_by_x(c):
        top = c[-1]
        shifted = [0] + list(c[:-1])
        if top:
            for i in range(n):
                shifted[i] -= top * f[i]
        return shifted

    for coords in itertools.product(range(-bound, bound + 1), repeat=n):
        lead = next((c for c in coords if c != 0), 0)
        if lead <= 0:
            continue  # handle -coords together with coords
        cols = [list(coords)]
        for _ in range(n - 1):
            cols.append(mult_by_x(cols[-1]))
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        if abs(linalg.int_det(mat)) != 1:
            continue
        for sign in (1, -1):
            elem = field.element([sign * c for c in coords])
            if totally_positive and not numfield.is_totally_positive(elem):
                continue
            out.append(elem)
    return out


@dataclass
class RankBoundReport:
    field_poly: IntPolynomial
    signature: Tuple[int, int]
    branch: Literal["a1", "a3"]
    bound: int
    survivor_count: int
    torsion_count: int
    nontorsion_coords: List[List[Fraction]]
    rank_lower: int
    rank_certified: Optional[int]
    theorem_bound: int
    verdict: Literal["confirmed", "consistent", "violated"]


def rank_bound_probe(field: NumberField, bound: int = 3,
                     branch: Literal["a1", "a3"] = "a1") -> RankBoundReport:
    """Brute-force the unit box, filter by the branch condition, and compare
    the log-rank of the surviving set against the bound rank <= s - 1."""
    s, t = field.signature
    if branch == "a1" and t < 2:
        raise SignatureViolation("the a1 branch needs t >= 2")
    if branch == "a3" and not 1 <= s < t:
        raise SignatureViolation("the a3 branch needs 1 <= s < t")
    units = bounded_unit_search(field, bound)
    if branch == "a1":
        survivors = [u for u in units if lck_condition_element(u)]
    else:
        survivors = [u for u in units if pluriclosed_condition_element(u)]
    torsion = [u for u in survivors if numfield.is_root_of_unity(u)]
    nontorsion = [u for u in survivors if not numfield.is_root_of_unity(u)]
    rank_lower = _certified_rank_lower(field, nontorsion)
    rank_certified = 0 if not nontorsion else None
    theorem_bound = s - 1
    if rank_certified is not None and rank_certified <= theorem_bound:
        verdict = "confirmed"
    elif rank_lower > theorem_bound:
        verdict = "violated"
    else:
        verdict = "consistent"
    return RankBoundReport(field.min_poly, (s, t), branch, bound,
                           len(survivors), len(torsion),
                           [list(u.coords) for u in nontorsion],
                           rank_lower, rank_certified, theorem_bound, verdict)


def _certified_rank_lower(field: NumberField, units: List[FieldElement],
                          precision: int = 96) -> int:
    """Largest subset with an interval-certified nonsingular log minor."""
    if not units:
        return 0
    from .unitlat import UnitGroup as UG, log_image
    rows = []
    for u in units:
        grp = UG(field, [u])
        rows.append(log_image(grp, precision).rows[0])
    dim = field.s + field.t
    best = 0
    for size in range(1, min(len(rows), dim) + 1):
        found = False
        for subset in itertools.combinations(range(len(rows)), size):
            for cols in itertools.combinations(range(dim), size):
                minor = [[rows[r][c] for c in cols] for r in subset]
                if not linalg.imat_det(minor).contains(0):
                    found = True
                    break
            if found:
                break
        if found:
            best = size
        else:
            break
    return best
