"""Number fields Q[x]/(f) with ordered certified embeddings.

Elements are rational coordinate vectors on the power basis 1, alpha,
..., alpha^(n-1).  The s real embeddings come first (roots ascending),
then t complex-pair representatives (upper half-plane, ordered by
enclosure).  Norm and trace always go through the exact regular
representation, never through floating embeddings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import IndexOutOfRange, NotIrreducible, NotMonic, PrecisionExhausted
from .exactnum.croots import ComplexAlgebraic, isolate_roots
from .exactnum.interval import Box, CertifiedInterval
from .exactnum.intpoly import IntPolynomial, qdivmod, qmul, qsub, qtrim
from .exactnum.irreducible import is_irreducible
from .exactnum.sturm import RealAlgebraic, count_real_roots


class NumberField:
    """Q[x]/(min_poly) for a monic irreducible integer polynomial."""

    def __init__(self, min_poly: IntPolynomial):
        if min_poly.is_zero or not min_poly.is_monic:
            raise NotMonic("the defining polynomial must be monic")
        if min_poly.degree < 1 or not is_irreducible(min_poly):
            raise NotIrreducible(f"{min_poly} is not irreducible over Q")
        self.min_poly = min_poly
        self.degree = min_poly.degree
        self.s = count_real_roots(min_poly)
        self.t = (self.degree - self.s) // 2
        self._roots: Optional[Tuple[List[RealAlgebraic], List[ComplexAlgebraic]]] = None
        # reduction table: alpha^(n-1+k) for k = 1..n-1 on the power basis
        n = self.degree
        table = []
        row = [Fraction(-c) for c in min_poly.coeffs[:-1]]
        table.append(row)
        for _ in range(n - 2):
            shifted = [Fraction(0)] + row[:-1]
            top = row[-1]
            row = [shifted[i] + top * table[0][i] for i in range(n)]
            table.append(row)
        self._reduction = table

    @property
    def signature(self) -> Tuple[int, int]:
        return (self.s, self.t)

    def roots(self) -> Tuple[List[RealAlgebraic], List[ComplexAlgebraic]]:
        if self._roots is None:
            self._roots = isolate_roots(self.min_poly)
        return self._roots

    # -- element construction ------------------------------------------------

    def element(self, coords: Sequence[Union[int, Fraction]]) -> "FieldElement":
        cs = [Fraction(c) for c in coords]
        if len(cs) > self.degree:
            raise ValueError("coordinate vector longer than the field degree")
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def generator(self) -> "FieldElement":
        return self.element([0, 1])

    def from_rational(self, q: Union[int, Fraction]) -> "FieldElement":
        return self.element([Fraction(q)])

    def _reduce(self, coeffs: List[Fraction]) -> Tuple[Fraction, ...]:
        n = self.degree
        out = coeffs[:n] + [Fraction(0)] * (n - len(coeffs[:n]))
        for k, c in enumerate(coeffs[n:]):
            if c:
                red = self._reduction[k]
                for i in range(n):
                    out[i] += c * red[i]
        return tuple(out)

    def __repr__(self):
        return f"NumberField({self.min_poly}, signature=({self.s},{self.t}))"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: Tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, tuple(a + b for a, b in
                                              zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.field, tuple(a - b for a, b in
                                              zip(self.coords, other.coords)))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other) -> "FieldElement":
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field,
                                tuple(a * other for a in self.coords))
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Extended Euclid against the minimal polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        f = self.field.min_poly.to_q()
        a = qtrim(list(self.coords))
        # Bezout: u*a + v*f = gcd = const
        r0, r1 = f, a
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, qsub(s0, qmul(q, s1))
        assert len(r0) == 1, "minimal polynomial not coprime to element"
        inv = [c / r0[0] for c in s0]
        return self.field.element(inv)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.min_poly, self.coords))

    def __repr__(self):
        return f"FieldElement{self.coords}"


@dataclass
class ZModule:
    """Full-rank Z-module in the field, given by a basis of n elements."""

    field: NumberField
    basis: List[FieldElement]

    def __post_init__(self):
        n = self.field.degree
        if len(self.basis) != n:
            raise ValueError("module basis must have n elements")
        if linalg.det(self.coordinate_matrix()) == 0:
            raise ValueError("module basis is linearly dependent")

    def coordinate_matrix(self) -> linalg.QMat:
        """Columns are the basis elements' power-basis coordinates."""
        return [[self.basis[j].coords[i] for j in range(len(self.basis))]
                for i in range(self.field.degree)]


def power_basis_module(field: NumberField) -> ZModule:
    """The order Z[alpha] (default module; maximal-order computation is out of scope)."""
    return ZModule(field, [field.generator() ** k for k in range(field.degree)])


@dataclass
class RegularRep:
    """Matrix of multiplication by an element on a module basis."""

    element: FieldElement
    module: ZModule
    matrix: linalg.QMat
    is_integral: bool
    det: Fraction


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def make_field(f: IntPolynomial) -> NumberField:
    return NumberField(f)


def element_min_poly(a: FieldElement) -> List[Fraction]:
    """Monic minimal polynomial over Q (lowest degree first), via the first
    linear dependency among 1, a, a^2, ..."""
    powers = [a.field.one()]
    while True:
        vecs = [list(p.coords) for p in powers]
        dep = linalg.linear_dependency(vecs)
        if dep is not None:
            return qtrim(dep)
        powers.append(powers[-1] * a)


def min_poly_int(a: FieldElement) -> IntPolynomial:
    """Primitive integer multiple of the minimal polynomial (same roots)."""
    return IntPolynomial.from_q(element_min_poly(a))


def is_algebraic_integer(a: FieldElement) -> bool:
    return all(c.denominator == 1 for c in element_min_poly(a))


def is_unit(a: FieldElement) -> bool:
    mp = element_min_poly(a)
    return (all(c.denominator == 1 for c in mp)
            and abs(mp[0]) == 1 and len(mp) > 0)


def is_totally_positive(a: FieldElement) -> bool:
    """Exact total positivity: the sign of each real embedding is decidable
    because sigma_i(a) = 0 only for a = 0 (so Inconclusive is unreachable)."""
    if a.is_zero():
        return False
    reals, _ = a.field.roots()
    for root in reals:
        bits = 16
        while True:
            root.refine_bits(bits)
            val = _eval_coords_interval(a, root.interval())
            s = val.sign()
            if s is not None and s != 0:
                break
            bits *= 2
        if s < 0:
            return False
    return True


def _eval_coords_interval(a: FieldElement, x: CertifiedInterval) -> CertifiedInterval:
    out = CertifiedInterval.exact(0)
    for c in reversed(a.coords):
        out = out * x + c
    return out


def _eval_coords_box(a: FieldElement, z: Box) -> Box:
    out = Box.exact(0)
    for c in reversed(a.coords):
        out = out * z + c
    return out


def regular_rep(a: FieldElement, m: ZModule) -> RegularRep:
    """Multiplication matrix of a on the module basis, with integrality and
    determinant flags."""
    basis_matrix = m.coordinate_matrix()
    inv = linalg.inverse(basis_matrix)
    cols = []
    for b in m.basis:
        prod = a * b
        cols.append(linalg.mat_vec(inv, list(prod.coords)))
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols))]
    return RegularRep(a, m, mat, linalg.is_integer_matrix(mat), linalg.det(mat))


def norm(a: FieldElement) -> Fraction:
    return linalg.det(regular_rep(a, power_basis_module(a.field)).matrix)


def trace(a: FieldElement) -> Fraction:
    return linalg.trace(regular_rep(a, power_basis_module(a.field)).matrix)


def embed_element(a: FieldElement, i: int, precision: int = 64,
                  cap: int = 4096) -> Union[CertifiedInterval, Box]:
    """Certified enclosure of sigma_i(a), 1-based; real for i <= s, complex
    box for s < i <= s + t."""
    field = a.field
    if not 1 <= i <= field.s + field.t:
        raise IndexOutOfRange(f"embedding index {i} outside 1..{field.s + field.t}")
    reals, pairs = field.roots()
    target = Fraction(1, 1 << precision)
    bits = max(precision, 16)
    while True:
        if i <= field.s:
            root = reals[i - 1]
            root.refine_bits(bits)
            out = _eval_coords_interval(a, root.interval())
            if out.width <= target:
                return out
        else:
            root = pairs[i - field.s - 1]
            root.refine_bits(bits)
            out = _eval_coords_box(a, root.box())
            if out.width() <= target:
                return out
        bits *= 2
        if bits > cap:
            raise PrecisionExhausted(
                f"embedding enclosure did not reach width 2^-{precision}")


def embedding_magnitude_sq(a: FieldElement, k: int, precision: int = 64
                           ) -> CertifiedInterval:
    """Enclosure of |sigma_{s+k}(a)|^2 for the k-th complex representative."""
    box = embed_element(a, a.field.s + k, precision)
    return box.abs_sq()


def torsion_order_bound(n: int) -> int:
    """Largest k with euler_phi(k) <= n (roots of unity in degree-n fields)."""
    best = 1
    for k in range(1, 2 * n * n + 2):
        if _euler_phi(k) <= n:
            best = k
    return best


def _euler_phi(k: int) -> int:
    out, m, p = 1, k, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out *= (p - 1) * p ** (e - 1)
        p += 1
    if m > 1:
        out *= m - 1
    return out


def is_root_of_unity(a: FieldElement) -> bool:
    if a.is_zero():
        return False
    bound = torsion_order_bound(a.field.degree)
    w = a.field.one()
    for _ in range(bound):
        w = w * a
        if w == a.field.one():
            return True
    return False
