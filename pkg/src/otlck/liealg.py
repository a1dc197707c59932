"""Finite-dimensional real Lie algebras via structure constants, the
Chevalley-Eilenberg differential, and LCK / Vaisman verification.

Structure constants live in one of three coefficient rings: Fraction
(exact), SymPoly (exact symbolic), or CertifiedInterval (enclosures).
Verdicts carry a `certified` flag: exact rings prove identities, the
interval ring proves consistency (residual enclosures contain zero).

Conventions: J and metric are matrices acting on coordinate columns,
omega(X, Y) = <JX, Y>, the Lee vector A solves <A, .> = theta, and a
structure with theta = 0 is Kahler, for which the Vaisman question is
reported NotApplicable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import JacobiViolation, NoLeeCandidate
from .exactnum.interval import CertifiedInterval
from .sympoly import SymPoly

Scalar = Union[Fraction, SymPoly, CertifiedInterval]


def _is_zero(x: Scalar) -> Tuple[bool, bool]:
    """(consistent-with-zero, certified)."""
    if isinstance(x, CertifiedInterval):
        return x.contains(0), False
    if isinstance(x, SymPoly):
        return x.is_zero(), True
    return x == 0, True


def _zero_like(x: Scalar) -> bool:
    return _is_zero(x)[0]


def as_fraction(x: Scalar) -> Optional[Fraction]:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, SymPoly) and x.is_constant():
        return x.constant_value()
    return None


class LieAlgebra:
    """Structure constants c^k_{ij} for i < j on a chosen basis."""

    def __init__(self, dim: int,
                 brackets: Dict[Tuple[int, int], Dict[int, Scalar]],
                 labels: Optional[Sequence[str]] = None,
                 check_jacobi: bool = True):
        self.dim = dim
        self.labels = list(labels) if labels else [f"e{i+1}" for i in range(dim)]
        table: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for (i, j), comp in brackets.items():
            if i == j:
                raise ValueError("brackets are indexed by i < j")
            if i > j:
                i, j, comp = j, i, {k: -v for k, v in comp.items()}
            cur = table.setdefault((i, j), {})
            for k, v in comp.items():
                cur[k] = cur.get(k, Fraction(0)) + v
        self.table = {
            ij: {k: v for k, v in comp.items() if not _certainly_zero(v)}
            for ij, comp in table.items()
        }
        self.table = {ij: comp for ij, comp in self.table.items() if comp}
        if check_jacobi:
            self.verify_jacobi()

    def bracket_basis(self, i: int, j: int) -> Dict[int, Scalar]:
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -v for k, v in self.table.get((j, i), {}).items()}

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> List[Scalar]:
        out: List[Scalar] = [Fraction(0)] * self.dim
        for (i, j), comp in self.table.items():
            coeff = x[i] * y[j] - x[j] * y[i]
            if _certainly_zero(coeff):
                continue
            for k, v in comp.items():
                out[k] = out[k] + coeff * v
        return out

    def ad(self, x: Sequence[Scalar]) -> List[List[Scalar]]:
        """Matrix of ad_x acting on coordinate columns."""
        cols = []
        for j in range(self.dim):
            e = [Fraction(0)] * self.dim
            e[j] = Fraction(1)
            cols.append(self.bracket(x, e))
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def verify_jacobi(self) -> None:
        for i, j, k in itertools.combinations(range(self.dim), 3):
            res = self._jacobi_residual(i, j, k)
            for m, v in enumerate(res):
                ok, _ = _is_zero(v)
                if not ok:
                    raise JacobiViolation(
                        f"Jacobi fails on ({self.labels[i]},{self.labels[j]},"
                        f"{self.labels[k]}) component {self.labels[m]}: {v}")

    def _jacobi_residual(self, i: int, j: int, k: int) -> List[Scalar]:
        out: List[Scalar] = [Fraction(0)] * self.dim
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = self.bracket_basis(a, b)
            for m, v in inner.items():
                term = self.bracket_basis(m, c)
                for r, w in term.items():
                    out[r] = out[r] + v * w
        return [-x for x in out]

    def is_unimodular(self) -> bool:
        for i in range(self.dim):
            tr: Scalar = Fraction(0)
            for j in range(self.dim):
                tr = tr + self.bracket_basis(i, j).get(j, Fraction(0))
            ok, _ = _is_zero(tr)
            if not ok:
                return False
        return True


def _certainly_zero(x: Scalar) -> bool:
    """Zero in the exact sense (safe to drop from sparse tables)."""
    if isinstance(x, CertifiedInterval):
        return x.lo == 0 and x.hi == 0
    if isinstance(x, SymPoly):
        return x.is_zero()
    return x == 0


# ---------------------------------------------------------------------------
# alternating forms
# ---------------------------------------------------------------------------

@dataclass
class KForm:
    """Alternating k-form: coefficients on strictly increasing index tuples."""

    degree: int
    coeffs: Dict[Tuple[int, ...], Scalar] = dc_field(default_factory=dict)

    def get(self, idx: Tuple[int, ...]) -> Scalar:
        sign, key = _sort_signed(idx)
        if sign == 0:
            return Fraction(0)
        v = self.coeffs.get(key, Fraction(0))
        return v if sign > 0 else -v

    def set(self, idx: Tuple[int, ...], value: Scalar) -> None:
        sign, key = _sort_signed(idx)
        if sign == 0:
            raise ValueError("repeated index in alternating form")
        self.coeffs[key] = value if sign > 0 else -value

    def add(self, idx: Tuple[int, ...], value: Scalar) -> None:
        sign, key = _sort_signed(idx)
        if sign == 0:
            return
        cur = self.coeffs.get(key, Fraction(0))
        self.coeffs[key] = cur + (value if sign > 0 else -value)

    def is_zero(self) -> Tuple[bool, bool]:
        ok, certified = True, True
        for v in self.coeffs.values():
            z, cert = _is_zero(v)
            ok = ok and z
            certified = certified and cert
        return ok, certified

    def __sub__(self, other: "KForm") -> "KForm":
        assert self.degree == other.degree
        out = KForm(self.degree, dict(self.coeffs))
        for k, v in other.coeffs.items():
            out.coeffs[k] = out.coeffs.get(k, Fraction(0)) - v
        return out

    def scale(self, c: Scalar) -> "KForm":
        return KForm(self.degree, {k: v * c for k, v in self.coeffs.items()})


def _sort_signed(idx: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def wedge(a: KForm, b: KForm) -> KForm:
    out = KForm(a.degree + b.degree)
    for ia, va in a.coeffs.items():
        for ib, vb in b.coeffs.items():
            out.add(ia + ib, va * vb)
    return out


def one_form(coeffs: Sequence[Scalar]) -> KForm:
    return KForm(1, {(i,): c for i, c in enumerate(coeffs)
                     if not _certainly_zero(c)})


def ce_differential(form: KForm, algebra: LieAlgebra) -> KForm:
    """Chevalley-Eilenberg exterior derivative from structure constants."""
    k = form.degree
    if k >= algebra.dim:
        raise ValueError("degree must be below the algebra dimension")
    out = KForm(k + 1)
    for idx in itertools.combinations(range(algebra.dim), k + 1):
        total: Scalar = Fraction(0)
        for p, q in itertools.combinations(range(k + 1), 2):
            rest = tuple(idx[r] for r in range(k + 1) if r not in (p, q))
            comp = algebra.bracket_basis(idx[p], idx[q])
            for m, v in comp.items():
                sign = (-1) ** (p + q)
                total = total + sign * v * form.get((m,) + rest)
        if not _certainly_zero(total):
            out.coeffs[idx] = total
    return out


# ---------------------------------------------------------------------------
# Hermitian structures
# ---------------------------------------------------------------------------

Mat = List[List[Scalar]]


def _mat_mul(a: Mat, b: Mat) -> Mat:
    n, m = len(a), len(b[0])
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        for k in range(len(b)):
            x = a[i][k]
            if _certainly_zero(x):
                continue
            for j in range(m):
                out[i][j] = out[i][j] + x * b[k][j]
    return out


def _mat_vec(a: Mat, v: Sequence[Scalar]) -> List[Scalar]:
    return [sum_scalars(a[i][j] * v[j] for j in range(len(v)))
            for i in range(len(a))]


def sum_scalars(items) -> Scalar:
    out: Scalar = Fraction(0)
    for x in items:
        out = out + x
    return out


@dataclass
class HermitianStructure:
    """Complex structure J, compatible metric, and the derived data."""

    algebra: LieAlgebra
    J: Mat
    metric: Mat

    def __post_init__(self):
        n = self.algebra.dim
        jj = _mat_mul(self.J, self.J)
        for i in range(n):
            for j in range(n):
                expect = Fraction(-1) if i == j else Fraction(0)
                if not _zero_like(jj[i][j] - expect):
                    raise ValueError("J^2 != -identity")
        for i in range(n):
            for j in range(n):
                if not _zero_like(self.metric[i][j] - self.metric[j][i]):
                    raise ValueError("metric is not symmetric")
        # J-invariance: J^T G J = G
        jt = [[self.J[j][i] for j in range(n)] for i in range(n)]
        g2 = _mat_mul(jt, _mat_mul(self.metric, self.J))
        for i in range(n):
            for j in range(n):
                if not _zero_like(g2[i][j] - self.metric[i][j]):
                    raise ValueError("metric is not J-invariant")

    def fundamental_form(self) -> KForm:
        """omega(e_i, e_j) = <J e_i, e_j>."""
        n = self.algebra.dim
        out = KForm(2)
        for i in range(n):
            for j in range(i + 1, n):
                v = sum_scalars(self.J[k][i] * self.metric[k][j]
                                for k in range(n))
                if not _certainly_zero(v):
                    out.coeffs[(i, j)] = v
        return out

    def is_positive_definite(self) -> Optional[bool]:
        """Exact leading-minor test; None when intervals cannot decide."""
        g = self.metric
        n = self.algebra.dim
        rows = []
        for k in range(1, n + 1):
            sub = [[as_fraction(g[i][j]) for j in range(k)] for i in range(k)]
            if any(x is None for row in sub for x in row):
                return _interval_posdef(g, n)
            if linalg.det(sub) <= 0:
                return False
        return True


def _interval_posdef(g: Mat, n: int) -> Optional[bool]:
    for k in range(1, n + 1):
        sub = [[g[i][j] for j in range(k)] for i in range(k)]
        d = linalg.imat_det(sub)
        if d.hi <= 0:
            return False
        if d.lo <= 0:
            return None
    return True


def nijenhuis(algebra: LieAlgebra, J: Mat) -> List[Tuple[int, int, List[Scalar]]]:
    """Nonzero N_J(e_i, e_j) residual components; empty means integrable.

    N_J(X,Y) = [X,Y] - [JX,JY] + J[X,JY] + J[JX,Y].
    """
    n = algebra.dim
    bad = []
    basis = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        basis.append(e)
    jcols = [[J[i][j] for i in range(n)] for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            ji = jcols[i]
            jj = jcols[j]
            term = algebra.bracket(basis[i], basis[j])
            t2 = algebra.bracket(ji, jj)
            t3 = _mat_vec(J, algebra.bracket(basis[i], jj))
            t4 = _mat_vec(J, algebra.bracket(ji, basis[j]))
            res = [term[k] - t2[k] + t3[k] + t4[k] for k in range(n)]
            if not all(_zero_like(x) for x in res):
                bad.append((i, j, res))
    return bad


def is_abelian_J(algebra: LieAlgebra, J: Mat) -> bool:
    """[Jx, Jy] = [x, y] on all basis pairs."""
    n = algebra.dim
    jcols = [[J[i][j] for i in range(n)] for j in range(n)]
    basis = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = algebra.bracket(jcols[i], jcols[j])
            rhs = algebra.bracket(basis[i], basis[j])
            if not all(_zero_like(a - b) for a, b in zip(lhs, rhs)):
                return False
    return True


@dataclass
class LckReport:
    nijenhuis_zero: bool
    dtheta_zero: bool
    lck_residual_zero: bool
    certified: bool
    theta: Optional[KForm]
    lee_vector: Optional[List[Scalar]]
    residual: Optional[KForm] = None

    @property
    def is_lck(self) -> bool:
        return self.nijenhuis_zero and self.dtheta_zero and self.lck_residual_zero


def solve_lee_form(algebra: LieAlgebra, omega: KForm,
                   domega: KForm) -> Optional[List[Fraction]]:
    """Unique rational theta with d omega = theta ^ omega, if the system has
    exact rational data and a solution; None otherwise."""
    n = algebra.dim
    rows, rhs = [], []
    for idx in itertools.combinations(range(n), 3):
        row = []
        for m in range(n):
            em = one_form([Fraction(int(k == m)) for k in range(n)])
            row.append(as_fraction(wedge(em, omega).get(idx)))
        b = as_fraction(domega.get(idx))
        if any(x is None for x in row) or b is None:
            return None
        rows.append(row)
        rhs.append(b)
    sol = linalg.solve_general(rows, rhs)
    return sol


def verify_lck(algebra: LieAlgebra, structure: HermitianStructure,
               theta: Optional[KForm] = None) -> LckReport:
    """Check integrability, recover or verify the Lee form, and test
    d omega = theta ^ omega and d theta = 0."""
    nij = nijenhuis(algebra, structure.J)
    nij_zero = not nij
    omega = structure.fundamental_form()
    domega = ce_differential(omega, algebra)
    if theta is None:
        sol = solve_lee_form(algebra, omega, domega)
        if sol is None:
            mid_sol = _midpoint_lee_form(algebra, omega, domega)
            if mid_sol is None:
                raise NoLeeCandidate(
                    "d omega is not of the form theta ^ omega (no candidate)")
            sol = mid_sol
        theta = one_form(sol)
    residual = domega - wedge(theta, omega)
    res_zero, res_cert = residual.is_zero()
    # d theta = 0 iff theta vanishes on [g, g]
    dtheta = ce_differential(theta, algebra)
    dth_zero, dth_cert = dtheta.is_zero()
    lee_vec = _lee_vector(structure, theta)
    certified = res_cert and dth_cert
    return LckReport(nij_zero, dth_zero, res_zero and nij_zero, certified,
                     theta, lee_vec, residual)


def _midpoint_lee_form(algebra, omega, domega) -> Optional[List[Fraction]]:
    """Least-squares candidate from interval midpoints (exact rational normal
    equations); the sound check is the residual enclosure afterwards."""
    n = algebra.dim
    rows, rhs = [], []

    def mid(x):
        if isinstance(x, CertifiedInterval):
            return x.mid
        return as_fraction(x)

    for idx in itertools.combinations(range(n), 3):
        row = []
        for m in range(n):
            em = one_form([Fraction(int(k == m)) for k in range(n)])
            v = mid(wedge(em, omega).get(idx))
            if v is None:
                return None
            row.append(v)
        b = mid(domega.get(idx))
        if b is None:
            return None
        rows.append(row)
        rhs.append(b)
    at = linalg.transpose(rows)
    ata = linalg.mat_mul(at, rows)
    atb = linalg.mat_vec(at, rhs)
    try:
        return linalg.solve(ata, atb)
    except ZeroDivisionError:
        return None


def _lee_vector(structure: HermitianStructure, theta: KForm
                ) -> Optional[List[Scalar]]:
    n = structure.algebra.dim
    tvec = [theta.get((i,)) for i in range(n)]
    g = structure.metric
    gq = [[as_fraction(x) for x in row] for row in g]
    tq = [as_fraction(x) for x in tvec]
    if all(x is not None for row in gq for x in row) and all(
            x is not None for x in tq):
        try:
            return list(linalg.solve(gq, tq))
        except ZeroDivisionError:
            return None
    try:
        gi = [[_as_interval(x) for x in row] for row in g]
        ti = [[_as_interval(x)] for x in tvec]
        sol = linalg.imat_solve(gi, ti)
        return [row[0] for row in sol]
    except (ZeroDivisionError, TypeError):
        return None


def _as_interval(x: Scalar) -> CertifiedInterval:
    if isinstance(x, CertifiedInterval):
        return x
    f = as_fraction(x)
    if f is None:
        raise TypeError("cannot mix symbolic scalars into interval solves")
    return CertifiedInterval.exact(f)


VaismanVerdict = Union[bool, str]


def verify_vaisman(algebra: LieAlgebra, structure: HermitianStructure,
                   report: LckReport) -> VaismanVerdict:
    """ad_A skew-symmetry w.r.t. the metric; NotApplicable when theta = 0
    (Kahler convention: Vaisman presumes a nonvanishing Lee form)."""
    theta_zero, _ = report.theta.is_zero() if report.theta else (True, True)
    if theta_zero:
        return "NotApplicable"
    if report.lee_vector is None:
        return "NotApplicable"
    ad = algebra.ad(report.lee_vector)
    g = structure.metric
    n = algebra.dim
    # <ad_A x, y> + <x, ad_A y> = 0  <=>  ad^T G + G ad = 0
    for i in range(n):
        for j in range(n):
            v = sum_scalars(ad[k][i] * g[k][j] + g[i][k] * ad[k][j]
                            for k in range(n))
            if not _zero_like(v):
                return False
    return True
