"""Small exact multivariate polynomial ring over Fraction.

Just enough for symbolic verification of the structure identities:
the coefficients of an OT-like algebra are linear in the formal
imaginary-part symbols, so products stay low degree.  Monomials are
sorted tuples of (name, exponent); the zero polynomial has no terms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple, Union

Monomial = Tuple[Tuple[str, int], ...]
Scalar = Union[int, Fraction, "SymPoly"]


class SymPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Fraction]):
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @staticmethod
    def constant(c: Union[int, Fraction]) -> "SymPoly":
        c = Fraction(c)
        return SymPoly({(): c} if c else {})

    @staticmethod
    def symbol(name: str) -> "SymPoly":
        return SymPoly({((name, 1),): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def __add__(self, other: Scalar) -> "SymPoly":
        other = _lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Scalar) -> "SymPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: Scalar) -> "SymPoly":
        return _lift(other) + (-self)

    def __mul__(self, other: Scalar) -> "SymPoly":
        other = _lift(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _merge(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return SymPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SymPoly.constant(other)
        return isinstance(other, SymPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in m)
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)


def _merge(m1: Monomial, m2: Monomial) -> Monomial:
    d: Dict[str, int] = {}
    for n, e in m1 + m2:
        d[n] = d.get(n, 0) + e
    return tuple(sorted(d.items()))


def _lift(x: Scalar) -> SymPoly:
    if isinstance(x, SymPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return SymPoly.constant(x)
    raise TypeError(f"cannot lift {type(x)} into the polynomial ring")
