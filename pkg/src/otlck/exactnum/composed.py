"""Composed-product polynomials and exact identification of root products.

For a squarefree integer f with roots r_1..r_n, `composed_product_poly`
returns integer polynomials whose root multisets are

    arity 2:  { r_i r_j     : i <= j }
    arity 3:  { r_i r_j r_k : i <= j <= k }

built from resultants.  Writing T for the ordered-pair (resp. triple)
product polynomial, S2/S3 for the square/cube polynomials and P21 for
{r_i^2 r_j}, the index-pattern identities

    D2^2 = T2 * S2          D3^6 = T3 * P21^3 * S3^2

hold for every f, so the target polynomial is an exact polynomial root.

Equality questions between conjugate products (|sigma(u)|^2 values,
sigma_j(u)|sigma_{s+j}(u)|^2 products) reduce to identifying which
isolated real root of a composed product a certified enclosure pins
down; `RealRootIdentifier` performs that identification exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional

from ..errors import ZeroPolynomial
from .interval import CertifiedInterval
from .intpoly import (IntPolynomial, lagrange_int, qmonic, qpoly_kth_root,
                      qresultant)
from .sturm import RealAlgebraic, isolate_real_roots


def _pair_compose(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Polynomial with root multiset {r_i * s_j} (all ordered pairs).

    Res_y(f(y), y^m g(x/y)) evaluated at deg f * deg g + 1 integer points
    and interpolated; requires g(0) != 0 so the y-degree stays constant.
    """
    n, m = f.degree, g.degree
    assert g.coeffs[0] != 0
    if n == 0 or m == 0:
        return IntPolynomial([1])
    deg = n * m
    points = []
    v = 0
    while len(points) < deg + 1:
        # h_v(y) = sum g_k v^k y^(m-k); leading y-coefficient is g_0 != 0
        h = IntPolynomial([g[m - i] * v ** (m - i) for i in range(m + 1)])
        r = qresultant(f.to_q(), h.to_q())
        assert r.denominator == 1
        points.append((v, r.numerator))
        v = -v + (0 if v > 0 else 1)
    return lagrange_int(points).primitive()


def _graeffe_square(f: IntPolynomial) -> IntPolynomial:
    """Polynomial with roots {r_i^2}: from f(x) f(-x) = S2(x^2) up to sign."""
    p = f * f.shift_compose_neg()
    even = [p[2 * i] for i in range(p.degree // 2 + 1)]
    return IntPolynomial(even).primitive()


def _cube_poly(f: IntPolynomial) -> IntPolynomial:
    """Polynomial with roots {r_i^3} via Res_y(f(y), x - y^3)."""
    n = f.degree
    points = []
    for v in range(n + 1):
        g = IntPolynomial([v, 0, 0, -1])  # x - y^3 at x = v
        r = qresultant(f.to_q(), g.to_q())
        assert r.denominator == 1
        points.append((v, r.numerator))
    return lagrange_int(points).primitive()


def composed_product_poly(f: IntPolynomial, arity: int) -> IntPolynomial:
    """Integer polynomial whose roots are the products of `arity` roots of f
    taken with non-decreasing indices (repetitions allowed)."""
    if f.is_zero:
        raise ZeroPolynomial("composed product of the zero polynomial")
    if arity not in (2, 3):
        raise ValueError("arity must be 2 or 3")
    f = f.primitive()
    n = f.degree
    if n == 0:
        return IntPolynomial([1])
    if f.coeffs[0] == 0:
        # squarefree f has a simple root at 0; products touching it vanish
        f1 = IntPolynomial(f.coeffs[1:])
        inner = composed_product_poly(f1, arity) if f1.degree > 0 else IntPolynomial([1])
        zeros = (n * (n + 1) // 2 - (n - 1) * n // 2 if arity == 2
                 else n * (n + 1) * (n + 2) // 6 - (n - 1) * n * (n + 1) // 6)
        return (IntPolynomial([0, 1]) ** zeros * inner).primitive()
    t2 = _pair_compose(f, f)
    s2 = _graeffe_square(f)
    if arity == 2:
        prod = qmonic((t2 * s2).to_q())
        root = qpoly_kth_root(prod, 2)
        out = IntPolynomial.from_q(root)
        assert out.degree == n * (n + 1) // 2
        return out
    t3 = _pair_compose(t2, f)
    p21 = _pair_compose(s2, f)
    s3 = _cube_poly(f)
    prod = qmonic((t3 * p21 ** 3 * s3 ** 2).to_q())
    root = qpoly_kth_root(prod, 6)
    out = IntPolynomial.from_q(root)
    assert out.degree == n * (n + 1) * (n + 2) // 6
    return out


class RealRootIdentifier:
    """Identify certified real values with the isolated roots of one polynomial.

    Every value fed to `identify` must be known (by construction) to be a
    root of `poly`; the identification then terminates and is exact.
    """

    def __init__(self, poly: IntPolynomial):
        self.poly = poly.squarefree_part()
        self.roots: List[RealAlgebraic] = isolate_real_roots(self.poly)

    def identify(self, enclose: Callable[[int], CertifiedInterval],
                 start_bits: int = 32, max_bits: int = 4096) -> int:
        """Index of the root equal to the enclosed value.

        `enclose(bits)` must return enclosures of the same value that
        shrink as `bits` grows.
        """
        bits = start_bits
        while True:
            val = enclose(bits)
            if val.width == 0:
                idx = self.rational_root_index(val.lo)
                if idx is None:
                    raise AssertionError(
                        "exact value certified to be a root is not one")
                return idx
            for r in self.roots:
                while r.width > val.width and r.interval().intersects(val):
                    r.refine_once()
            hits = [i for i, r in enumerate(self.roots)
                    if r.interval().intersects(val)]
            if len(hits) == 1:
                return hits[0]
            if not hits:
                raise AssertionError(
                    "value certified to be a root matches no isolated root")
            bits *= 2
            if bits > max_bits:
                raise AssertionError("identification did not converge")

    def rational_root_index(self, q: Fraction) -> Optional[int]:
        """Index of the exact rational root q, or None if q is not a root."""
        if self.poly.eval_fraction(Fraction(q)) != 0:
            return None
        for i, r in enumerate(self.roots):
            if r.compare_rational(Fraction(q)) == 0:
                return i
        return None
