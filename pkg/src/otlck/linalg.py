"""Exact linear algebra over Fraction, plus interval matrix routines.

Matrices are plain lists of rows.  Everything over Fraction is exact;
the interval routines produce sound enclosures and refuse to pivot on
an interval that might be zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactnum.interval import CertifiedInterval
from .exactnum.intpoly import QPoly, qtrim

QMat = List[List[Fraction]]
IMat = List[List[CertifiedInterval]]


def qmat(rows: Sequence[Sequence]) -> QMat:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> QMat:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> QMat:
    return [[Fraction(0)] * c for _ in range(r)]


def transpose(m: QMat) -> QMat:
    return [list(col) for col in zip(*m)]


def mat_mul(a: QMat, b: QMat) -> QMat:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: QMat, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a: QMat, b: QMat) -> QMat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: QMat, b: QMat) -> QMat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: QMat, c: Fraction) -> QMat:
    return [[x * c for x in row] for row in a]


def trace(a: QMat) -> Fraction:
    return sum(a[i][i] for i in range(len(a)))


def rref(m: QMat) -> Tuple[QMat, List[int]]:
    """Reduced row echelon form and pivot column indices."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: QMat) -> int:
    return len(rref(m)[1])


def det(m: QMat) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    a = [list(row) for row in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def int_det(m: List[List[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss, division-free result)."""
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            pr = next((i for i in range(c + 1, n) if a[i][c] != 0), None)
            if pr is None:
                return 0
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def inverse(m: QMat) -> QMat:
    n = len(m)
    aug = [list(row) + ident for row, ident in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def solve(a: QMat, b: Sequence[Fraction]) -> List[Fraction]:
    """Unique solution of a x = b; raises when singular/inconsistent."""
    n = len(a)
    aug = [list(row) + [Fraction(b[i])] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ZeroDivisionError("system is singular")
    return [red[i][n] for i in range(n)]


def solve_general(a: QMat, b: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Some solution of a x = b for a possibly non-square/singular system."""
    rows, cols = len(a), len(a[0])
    aug = [list(a[i]) + [Fraction(b[i])] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None  # inconsistent
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def kernel(m: QMat) -> List[List[Fraction]]:
    """Basis of the right null space."""
    rows, cols = len(m), len(m[0]) if m else 0
    red, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def charpoly(m: QMat) -> QPoly:
    """Characteristic polynomial det(xI - m) by Faddeev-LeVerrier,
    lowest degree first, monic."""
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    am = [row[:] for row in m]
    c = Fraction(1)
    for k in range(1, n + 1):
        if k > 1:
            am = mat_mul(m, mat_add(am_prev, _diag(c, n)))
        c = -trace(am) / k
        coeffs[n - k] = c
        am_prev = am
    return coeffs


def _diag(c: Fraction, n: int) -> QMat:
    return [[c if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def minimal_poly_of_matrix(m: QMat) -> QPoly:
    """Monic minimal polynomial via the first linear dependency among powers."""
    n = len(m)
    powers = [identity(n)]
    while True:
        powers.append(mat_mul(powers[-1], m))
        vecs = [[p[i][j] for i in range(n) for j in range(n)] for p in powers]
        coeffs = linear_dependency(vecs)
        if coeffs is not None:
            return qtrim(coeffs)


def linear_dependency(vecs: List[List[Fraction]]) -> Optional[List[Fraction]]:
    """Monic-in-last-vector dependency among the vectors (if any)."""
    k = len(vecs)
    a = transpose([v[:] for v in vecs])  # columns = vectors
    red, pivots = rref(a)
    if len(pivots) == k:
        return None
    if k - 1 in pivots:
        return None  # last vector independent of the earlier ones
    coeffs = [Fraction(0)] * k
    coeffs[k - 1] = Fraction(1)
    for r, c in enumerate(pivots):
        coeffs[c] = -red[r][k - 1]
    return coeffs


def is_integer_matrix(m: QMat) -> bool:
    return all(x.denominator == 1 for row in m for x in row)


# ---------------------------------------------------------------------------
# interval matrices
# ---------------------------------------------------------------------------

def imat_from_q(m: QMat) -> IMat:
    return [[CertifiedInterval.exact(x) for x in row] for row in m]


def imat_mul(a: IMat, b: IMat) -> IMat:
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            s = CertifiedInterval.exact(0)
            for x, y in zip(row, col):
                s = s + x * y
            orow.append(s)
        out.append(orow)
    return out


def imat_solve(a: IMat, b: IMat) -> IMat:
    """Enclosure of a^-1 b by Gaussian elimination with certified pivots.

    Raises ZeroDivisionError when no pivot can be certified nonzero.
    """
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for c in range(n):
        # pick the pivot with the largest certified distance from zero
        best, best_mig = None, None
        for i in range(c, n):
            e = aug[i][c]
            if e.lo > 0 or e.hi < 0:
                mig = min(abs(e.lo), abs(e.hi))
                if best is None or mig > best_mig:
                    best, best_mig = i, mig
        if best is None:
            raise ZeroDivisionError("no interval pivot certified nonzero")
        aug[c], aug[best] = aug[best], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for i in range(n):
            if i != c:
                f = aug[i][c]
                if f.lo == f.hi == 0:
                    continue
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def imat_det(a: IMat) -> CertifiedInterval:
    """Determinant enclosure by Laplace expansion (small matrices only)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    out = CertifiedInterval.exact(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * imat_det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out
