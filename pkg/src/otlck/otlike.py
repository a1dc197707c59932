"""OT-like Lie algebras, their standard LCK structure, and forward lattices.

An OT-like algebra of type (s,t) has basis u_1..u_s, v_1..v_s,
x_1,y_1,..,x_t,y_t with brackets

    [u_j, v_j] = v_j
    [u_j, x_k] = Re(c_kj) x_k + Im(c_kj) y_k
    [u_j, y_k] = -Im(c_kj) x_k + Re(c_kj) y_k

for a t x s complex matrix C whose Re-column sums are -1/2 (that is
exactly unimodularity).  When every Re entry is -1/(2t) the algebra is
LCK OT-like and carries the standard structure

    J u_i = v_i,  J x_k = y_k
    omega = t sum u^i ^ v^i + sum_{i,j} u^i ^ v^j + sum x^k ^ y^k
    theta = (1/t)(u^1 + ... + u^s).

C entries may be exact rationals, formal symbols (for identity replay),
or certified intervals (instantiated arithmetic data).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import linalg, numfield
from .errors import ColumnSumViolation, NonIntegerAction, NotLckOtLike
from .exactnum.interval import Box, CertifiedInterval
from .exactnum.intpoly import IntPolynomial, qtrim
from .liealg import (HermitianStructure, KForm, LieAlgebra, Scalar, one_form,
                     verify_lck)
from .numfield import FieldElement, NumberField, ZModule
from .sympoly import SymPoly
from .unitlat import LogImage, MatrixC, UnitGroup

CEntry = Tuple[Scalar, Scalar]
CMatrix = List[List[CEntry]]


def _scalar_equals(x: Scalar, q: Fraction) -> bool:
    """Exact equality for exact rings; enclosure for intervals."""
    if isinstance(x, CertifiedInterval):
        return x.contains(q)
    if isinstance(x, SymPoly):
        return x == SymPoly.constant(q)
    return Fraction(x) == q


def cmatrix_from_unitlat(c: MatrixC) -> CMatrix:
    return [[(re, im) for (re, im) in row] for row in c.entries]


def symbolic_lck_cmatrix(s: int, t: int) -> CMatrix:
    """Re parts pinned to -1/(2t); Im parts formal symbols d_ij."""
    re = Fraction(-1, 2 * t)
    return [[(re, SymPoly.symbol(f"d{i+1}{j+1}")) for j in range(s)]
            for i in range(t)]


@dataclass
class OTLikeAlgebra:
    s: int
    t: int
    C: CMatrix
    algebra: LieAlgebra

    @property
    def dim(self) -> int:
        return 2 * self.s + 2 * self.t

    def basis_labels(self) -> List[str]:
        return self.algebra.labels

    def index_u(self, i: int) -> int:
        return i

    def index_v(self, i: int) -> int:
        return self.s + i

    def index_x(self, k: int) -> int:
        return 2 * self.s + 2 * k

    def index_y(self, k: int) -> int:
        return 2 * self.s + 2 * k + 1


def build_ot_like(C: CMatrix) -> OTLikeAlgebra:
    """Construct g_C; raises ColumnSumViolation unless each Re column sums
    to -1/2 (exactly, or as an enclosure for interval entries)."""
    t = len(C)
    if t == 0:
        raise ValueError("C must have at least one row")
    s = len(C[0])
    for j in range(s):
        col = sum((C[i][j][0] for i in range(t)), Fraction(0))
        if not _scalar_equals(col, Fraction(-1, 2)):
            raise ColumnSumViolation(
                f"Re column {j + 1} sums to {col}, expected -1/2")
    labels = ([f"u{i+1}" for i in range(s)] + [f"v{i+1}" for i in range(s)]
              + [name for k in range(t) for name in (f"x{k+1}", f"y{k+1}")])
    brackets = {}
    for j in range(s):
        u = j
        brackets[(u, s + j)] = {s + j: Fraction(1)}
        for k in range(t):
            re, im = C[k][j]
            x = 2 * s + 2 * k
            y = x + 1
            brackets[(u, x)] = {x: re, y: im}
            brackets[(u, y)] = {x: -im, y: re}
    alg = LieAlgebra(2 * s + 2 * t, brackets, labels)
    return OTLikeAlgebra(s, t, C, alg)


def is_lck_ot_like(C: CMatrix) -> bool:
    t = len(C)
    target = Fraction(-1, 2 * t)
    return all(_scalar_equals(C[i][j][0], target)
               for i in range(t) for j in range(len(C[0])))


@dataclass
class StandardStructure:
    ot: OTLikeAlgebra
    structure: HermitianStructure
    omega: KForm
    theta: KForm


def standard_structure(ot: OTLikeAlgebra) -> StandardStructure:
    if not is_lck_ot_like(ot.C):
        raise NotLckOtLike("standard structure needs Re c_ij = -1/(2t)")
    s, t, n = ot.s, ot.t, ot.dim
    J = [[Fraction(0)] * n for _ in range(n)]
    for i in range(s):
        J[ot.index_v(i)][ot.index_u(i)] = Fraction(1)
        J[ot.index_u(i)][ot.index_v(i)] = Fraction(-1)
    for k in range(t):
        J[ot.index_y(k)][ot.index_x(k)] = Fraction(1)
        J[ot.index_x(k)][ot.index_y(k)] = Fraction(-1)
    omega = KForm(2)
    for i in range(s):
        for j in range(s):
            omega.add((ot.index_u(i), ot.index_v(j)),
                      Fraction(t + 1) if i == j else Fraction(1))
    for k in range(t):
        omega.coeffs[(ot.index_x(k), ot.index_y(k))] = Fraction(1)
    # metric from omega and J: <x, y> = omega(x, Jy)
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            G[i][j] = sum(omega.get((i, k)) * J[k][j] for k in range(n))
    structure = HermitianStructure(ot.algebra, J, G)
    theta = one_form([Fraction(1, t)] * s + [Fraction(0)] * (n - s))
    return StandardStructure(ot, structure, omega, theta)


RationalC = List[List[Tuple[Fraction, Fraction]]]


def c_matrices_equivalent(c1: RationalC, c2: RationalC,
                          allow_column_permutation: bool = False) -> bool:
    """Exact-rational C equivalence: rows may permute and conjugate; columns
    may permute only when the u-basis order is not an invariant (the
    normalization round trip)."""
    import itertools as it
    t = len(c1)
    if len(c2) != t or len(c1[0]) != len(c2[0]):
        return False
    s = len(c1[0])
    col_perms = it.permutations(range(s)) if allow_column_permutation else [tuple(range(s))]
    for cperm in col_perms:
        for rperm in it.permutations(range(t)):
            for mask in it.product((1, -1), repeat=t):
                ok = True
                for i in range(t):
                    for j in range(s):
                        re1, im1 = c1[i][j]
                        re2, im2 = c2[rperm[i]][cperm[j]]
                        if re1 != re2 or im1 != mask[i] * im2:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    return True
    return False


def interval_c_equivalent(c1: MatrixC, c2: MatrixC,
                          kappa: Optional[List[List[CertifiedInterval]]] = None,
                          two_pi: Optional[CertifiedInterval] = None) -> bool:
    """Interval-C equivalence: Re parts must mutually intersect; Im parts may
    differ by the branch lattice 2 pi O kappa^{-1} (integer O) when kappa is
    supplied, checked as (Im1 - Im2) kappa / 2pi enclosing integers."""
    import itertools as it
    t, s = c1.t, c1.s
    if (c2.t, c2.s) != (t, s):
        return False
    for rperm in it.permutations(range(t)):
        for mask in it.product((1, -1), repeat=t):
            if _interval_rows_match(c1, c2, rperm, mask, kappa, two_pi):
                return True
    return False


def _interval_rows_match(c1, c2, rperm, mask, kappa, two_pi) -> bool:
    t, s = c1.t, c1.s
    for i in range(t):
        for j in range(s):
            re1, im1 = c1.entries[i][j]
            re2, im2 = c2.entries[rperm[i]][j]
            if not re1.intersects(re2):
                return False
            if kappa is None:
                if not im1.intersects(im2 * mask[i]):
                    return False
    if kappa is None or two_pi is None:
        return True
    for i in range(t):
        # (Im1 - Im2') kappa must be 2 pi times integers
        diff = [c1.entries[i][j][1] - c2.entries[rperm[i]][j][1] * mask[i]
                for j in range(s)]
        for k in range(s):
            acc = CertifiedInterval.exact(0)
            for j in range(s):
                acc = acc + diff[j] * kappa[j][k]
            ratio = acc / two_pi
            import math as _m
            lo = _m.ceil(ratio.lo)
            if not (lo <= ratio.hi and ratio.contains(lo)):
                return False
    return True


# ---------------------------------------------------------------------------
# forward lattice data
# ---------------------------------------------------------------------------

@dataclass
class ForwardLatticeData:
    """iota(U ltimes module): integer matrices, embedding matrix, residuals."""

    matrices: List[linalg.QMat]
    dets: List[Fraction]
    p_rows_real: List[List[CertifiedInterval]]
    p_rows_complex: List[List[Box]]
    kappa_columns: List[List[CertifiedInterval]]
    max_residual_width: Fraction
    charpoly_is_minpoly_power: List[bool]


def forward_lattice(field: NumberField, group: UnitGroup, module: ZModule,
                    log_img: LogImage, precision: int = 64
                    ) -> ForwardLatticeData:
    """Integer matrices of the unit action on the module, plus the certified
    embedding matrix P (rows = embeddings of the module basis) and the
    diagonalization residual check P M_i ~ diag(sigma(a_i)) P."""
    n = field.degree
    mats, dets, cp_ok = [], [], []
    for a in group.generators:
        rep = numfield.regular_rep(a, module)
        if not rep.is_integral:
            raise NonIntegerAction(
                f"generator {a} does not stabilize the module")
        if rep.det != 1:
            raise NonIntegerAction(
                f"generator action has determinant {rep.det}, expected +1")
        mats.append(rep.matrix)
        dets.append(rep.det)
        mp = qtrim(numfield.element_min_poly(a))
        chi = linalg.charpoly(rep.matrix)
        power = _poly_power(mp, n // (len(mp) - 1))
        cp_ok.append(chi == power)
    p_real = [[numfield.embed_element(b, r + 1, precision) for b in module.basis]
              for r in range(field.s)]
    p_complex = [[numfield.embed_element(b, field.s + k + 1, precision)
                  for b in module.basis] for k in range(field.t)]
    max_width = Fraction(0)
    for gi, a in enumerate(group.generators):
        m = mats[gi]
        for r in range(field.s):
            sig = numfield.embed_element(a, r + 1, precision)
            for j in range(n):
                left = sum((p_real[r][k] * m[k][j] for k in range(n)),
                           CertifiedInterval.exact(0))
                right = sig * p_real[r][j]
                diff = left - right
                if not diff.contains(0):
                    raise AssertionError("embedding row fails to diagonalize")
                max_width = max(max_width, diff.width)
        for c in range(field.t):
            sig = numfield.embed_element(a, field.s + c + 1, precision)
            for j in range(n):
                left = Box.exact(0)
                for k in range(n):
                    left = left + p_complex[c][k] * m[k][j]
                right = sig * p_complex[c][j]
                diff = left - right
                if not diff.contains(Fraction(0), Fraction(0)):
                    raise AssertionError("embedding row fails to diagonalize")
                max_width = max(max_width, diff.width())
    kappa_cols = [[log_img.rows[i][j] for j in range(field.s)]
                  for i in range(len(group.generators))]
    return ForwardLatticeData(mats, dets, p_real, p_complex, kappa_cols,
                              max_width, cp_ok)


def _poly_power(p: Sequence[Fraction], e: int) -> List[Fraction]:
    from .exactnum.intpoly import qmul
    out = [Fraction(1)]
    for _ in range(e):
        out = qmul(out, list(p))
    return out
