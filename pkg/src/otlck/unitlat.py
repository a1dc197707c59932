"""Dirichlet log images, admissibility certificates, and the matrix C.

The log map sends a totally positive unit u to

    (log sigma_1(u), ..., log sigma_s(u),
     log|sigma_{s+1}(u)|^2, ..., log|sigma_{s+t}(u)|^2),

whose coordinate sum vanishes (units have norm +1 here), so each row is
checked to enclose 0.  kappa is the s x s matrix of the projected rows,
columns indexed by generators.  C solves

    log|sigma_{s+i}(a_k)| = sum_j Re(c_ij) kappa_jk
    Arg sigma_{s+i}(a_k) + 2 pi offset_ik = sum_j Im(c_ij) kappa_jk

with certified interval arithmetic; the branch offsets are explicit data.
Admissibility is decided by a determinant interval excluding zero, a
bounded exact search for multiplicative dependences, or reported as
Inconclusive at the precision cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import List, Literal, Optional, Tuple, Union

from . import linalg, numfield
from .errors import PrecisionExhausted, WrongRank
from .exactnum.interval import (Box, CertifiedInterval, log_interval,
                                pi_interval)
from .numfield import FieldElement, NumberField

DEPENDENCE_EXPONENT_BOUND = 8
DEFAULT_PRECISION_CAP = 4096


@dataclass
class UnitGroup:
    """A chosen generating set of totally positive units."""

    field: NumberField
    generators: List[FieldElement]
    verified: List[dict] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.verified:
            self.verified = [
                {"unit": numfield.is_unit(g),
                 "totally_positive": numfield.is_totally_positive(g)}
                for g in self.generators
            ]

    @property
    def all_verified(self) -> bool:
        return all(v["unit"] and v["totally_positive"] for v in self.verified)


@dataclass
class LogImage:
    """Certified log rows (length s+t) and the projected kappa matrix."""

    group: UnitGroup
    rows: List[List[CertifiedInterval]]
    precision: int

    @property
    def kappa(self) -> List[List[CertifiedInterval]]:
        """kappa[j][i] = j-th coordinate of pr_{R^s} log(a_i)."""
        s = self.group.field.s
        return [[self.rows[i][j] for i in range(len(self.rows))]
                for j in range(s)]

    def kappa_det(self) -> CertifiedInterval:
        return linalg.imat_det(self.kappa)


@dataclass
class MatrixC:
    """t x s interval matrix C with explicit branch offsets."""

    entries: List[List[Tuple[CertifiedInterval, CertifiedInterval]]]
    branch_offsets: List[List[int]]
    lck_flag: bool
    column_sums_ok: bool

    @property
    def t(self) -> int:
        return len(self.entries)

    @property
    def s(self) -> int:
        return len(self.entries[0]) if self.entries else 0


AdmissibleVerdict = Literal["Admissible", "NotAdmissible", "Inconclusive"]


@dataclass
class AdmissibilityResult:
    verdict: AdmissibleVerdict
    det_interval: Optional[CertifiedInterval] = None
    dependence_witness: Optional[Tuple[int, ...]] = None
    precision_used: int = 0
    log_image: Optional[LogImage] = None


# ---------------------------------------------------------------------------


def log_image(group: UnitGroup, precision: int = 64,
              cap: int = DEFAULT_PRECISION_CAP) -> LogImage:
    """Certified log rows; every row sum must enclose 0 (norm-one identity)."""
    if not group.all_verified:
        raise ValueError("unit group has unverified generators")
    K = group.field
    target = Fraction(1, 1 << precision)
    rows = []
    for g in group.generators:
        bits = max(precision, 32)
        while True:
            row = _log_row(g, K, bits)
            if all(x.width <= target for x in row):
                break
            bits *= 2
            if bits > cap:
                raise PrecisionExhausted("log row did not reach target width")
        total = CertifiedInterval.exact(0)
        for x in row:
            total = total + x
        if not total.contains(0):
            raise AssertionError("log row sum fails to enclose 0")
        rows.append(row)
    return LogImage(group, rows, precision)


def _log_row(g: FieldElement, K: NumberField, bits: int) -> List[CertifiedInterval]:
    row = []
    for j in range(1, K.s + 1):
        val = numfield.embed_element(g, j, bits)
        if val.lo <= 0:
            val = numfield.embed_element(g, j, bits * 2)
        row.append(log_interval(val, bits + 16))
    for k in range(1, K.t + 1):
        sq = numfield.embedding_magnitude_sq(g, k, bits)
        if sq.lo <= 0:
            sq = numfield.embedding_magnitude_sq(g, k, bits * 2)
        row.append(log_interval(sq, bits + 16))
    return row


def _multiplicative_dependence(group: UnitGroup,
                               bound: int = DEPENDENCE_EXPONENT_BOUND
                               ) -> Optional[Tuple[int, ...]]:
    """Exponent vector e != 0 with prod a_i^e_i a root of unity, or None.

    Exactly decidable: in a field with a real embedding the only totally
    positive roots of unity is 1, but the power test covers all cases.
    """
    gens = group.generators
    K = group.field
    one = K.one()
    # precompute powers a^-bound..a^bound
    pows = []
    for g in gens:
        table = {0: one}
        for e in range(1, bound + 1):
            table[e] = table[e - 1] * g
        ginv = g.inverse()
        for e in range(1, bound + 1):
            table[-e] = table[-(e - 1)] * ginv
        pows.append(table)
    order = sorted(range(-bound, bound + 1), key=lambda e: (abs(e), -e))
    for evec in itertools.product(order, repeat=len(gens)):
        if all(e == 0 for e in evec):
            continue
        prod = one
        for table, e in zip(pows, evec):
            prod = prod * table[e]
        if prod == one or numfield.is_root_of_unity(prod):
            return evec
    return None


def check_admissible(group: UnitGroup, precision: int = 64,
                     cap: int = DEFAULT_PRECISION_CAP) -> AdmissibilityResult:
    """Admissible iff the kappa determinant interval excludes 0; exact
    dependences prove NotAdmissible; otherwise Inconclusive at the cap."""
    K = group.field
    if len(group.generators) != K.s:
        raise WrongRank(
            f"need exactly s = {K.s} generators, got {len(group.generators)}")
    bits = precision
    img = None
    while bits <= cap:
        img = log_image(group, bits, cap)
        d = img.kappa_det()
        if not d.contains(0):
            return AdmissibilityResult("Admissible", d, None, bits, img)
        witness = _multiplicative_dependence(group)
        if witness is not None:
            return AdmissibilityResult("NotAdmissible", d, witness, bits, img)
        bits *= 2
    return AdmissibilityResult("Inconclusive", img.kappa_det() if img else None,
                               None, bits // 2, img)


def solve_matrix_c(group: UnitGroup, log_img: LogImage,
                   branch: Union[str, List[List[int]]] = "principal",
                   precision: int = 64) -> MatrixC:
    """Solve for C; asserts the Re column sums enclose -1/2 and reports
    whether every Re entry encloses -1/(2t)."""
    K = group.field
    s, t = K.s, K.t
    if branch == "principal":
        offsets = [[0] * s for _ in range(t)]
    else:
        offsets = [[int(x) for x in row] for row in branch]
        if len(offsets) != t or any(len(r) != s for r in offsets):
            raise ValueError("branch offsets must be a t x s integer matrix")
    kappa = log_img.kappa
    # real part: rows of L are half the stored log|sigma|^2 entries
    half = Fraction(1, 2)
    L = [[log_img.rows[k][s + i] * half for k in range(s)] for i in range(t)]
    re_rows = _solve_rows(kappa, L)
    # imaginary part: certified argument enclosures plus branch shifts
    two_pi = pi_interval(precision + 16) * 2
    A = []
    for i in range(t):
        row = []
        for k in range(s):
            box = numfield.embed_element(group.generators[k], s + 1 + i,
                                         precision)
            row.append(box.arg(precision + 16) + two_pi * offsets[i][k])
        A.append(row)
    im_rows = _solve_rows(kappa, A)
    entries = [[(re_rows[i][j], im_rows[i][j]) for j in range(s)]
               for i in range(t)]
    sums_ok = True
    for j in range(s):
        col = CertifiedInterval.exact(0)
        for i in range(t):
            col = col + entries[i][j][0]
        if not col.contains(Fraction(-1, 2)):
            sums_ok = False
    if not sums_ok:
        raise AssertionError("Re column sums fail to enclose -1/2")
    lck = all(entries[i][j][0].contains(Fraction(-1, 2 * t))
              for i in range(t) for j in range(s))
    return MatrixC(entries, offsets, lck, sums_ok)


def _solve_rows(kappa, rows):
    """Solve x * kappa = row for each row (interval arithmetic)."""
    kt = [list(col) for col in zip(*kappa)]
    rt = [list(col) for col in zip(*rows)]
    xt = linalg.imat_solve(kt, rt)
    return [list(col) for col in zip(*xt)]
