"""JSON codecs for the wire formats.

Polynomials are arrays of decimal integer strings, lowest degree first;
rationals are "p/q" strings (bare integers accepted on input).  Every
encoder is deterministic so reports reproduce byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .errors import SchemaError
from .exactnum.interval import Box, CertifiedInterval
from .exactnum.intpoly import IntPolynomial
from .liealg import LieAlgebra
from .numfield import NumberField, ZModule, make_field, power_basis_module
from .unitlat import MatrixC, UnitGroup


# -- scalars -----------------------------------------------------------------

def encode_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def decode_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise SchemaError(f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise SchemaError(f"bad rational {x!r}: {e}") from None
    raise SchemaError(f"expected a rational, got {type(x).__name__}")


def encode_poly(p: IntPolynomial) -> List[str]:
    return [str(c) for c in p.coeffs]


def decode_poly(x: Any) -> IntPolynomial:
    if not isinstance(x, list):
        raise SchemaError("polynomial must be an array of integer strings")
    out = []
    for c in x:
        if isinstance(c, bool) or not isinstance(c, (int, str)):
            raise SchemaError(f"bad polynomial coefficient {c!r}")
        out.append(int(c))
    return IntPolynomial(out)


def encode_interval(x: CertifiedInterval) -> List[str]:
    return [encode_rational(x.lo), encode_rational(x.hi)]


def encode_box(b: Box) -> Dict[str, List[str]]:
    return {"re": encode_interval(b.re), "im": encode_interval(b.im)}


# -- field / unit-group specs --------------------------------------------------

def decode_field_spec(obj: Any) -> Tuple[NumberField, ZModule]:
    if not isinstance(obj, dict):
        raise SchemaError("field spec must be an object")
    unknown = set(obj) - {"min_poly", "module_basis"}
    if unknown:
        raise SchemaError(f"unknown field-spec keys: {sorted(unknown)}")
    if "min_poly" not in obj:
        raise SchemaError("field spec needs min_poly")
    field = make_field(decode_poly(obj["min_poly"]))
    if obj.get("module_basis") is None:
        module = power_basis_module(field)
    else:
        basis = [field.element([decode_rational(c) for c in vec])
                 for vec in obj["module_basis"]]
        module = ZModule(field, basis)
    return field, module


def encode_field_spec(field: NumberField) -> Dict[str, Any]:
    return {"min_poly": encode_poly(field.min_poly)}


def decode_unit_group(obj: Any) -> Tuple[UnitGroup, ZModule]:
    if not isinstance(obj, dict):
        raise SchemaError("unit-group spec must be an object")
    unknown = set(obj) - {"field", "generators"}
    if unknown:
        raise SchemaError(f"unknown unit-group keys: {sorted(unknown)}")
    field, module = decode_field_spec(obj.get("field"))
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise SchemaError("unit-group spec needs a nonempty generators array")
    elements = [field.element([decode_rational(c) for c in vec])
                for vec in gens]
    return UnitGroup(field, elements), module


def encode_matrix_c(c: MatrixC) -> Dict[str, Any]:
    return {
        "entries": [[{"re": encode_interval(re), "im": encode_interval(im)}
                     for re, im in row] for row in c.entries],
        "branch_offsets": [list(row) for row in c.branch_offsets],
        "lck_flag": c.lck_flag,
    }


# -- Lie algebra spec ----------------------------------------------------------

def decode_lie_algebra(obj: Any) -> Tuple[LieAlgebra, List[List[Fraction]],
                                          List[List[Fraction]], Optional[int]]:
    if not isinstance(obj, dict):
        raise SchemaError("Lie-algebra spec must be an object")
    unknown = set(obj) - {"dim", "brackets", "J", "metric", "m_dim"}
    if unknown:
        raise SchemaError(f"unknown Lie-algebra keys: {sorted(unknown)}")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError("dim must be a positive integer")
    brackets = {}
    for item in obj.get("brackets", []):
        extra = set(item) - {"i", "j", "coeffs"}
        if extra:
            raise SchemaError(f"unknown bracket keys: {sorted(extra)}")
        i, j = item["i"], item["j"]
        comp = {int(k): decode_rational(v) for k, v in item["coeffs"].items()}
        brackets[(i, j)] = comp
    alg = LieAlgebra(dim, brackets)
    J = [[decode_rational(x) for x in row] for row in obj["J"]]
    metric = [[decode_rational(x) for x in row] for row in obj["metric"]]
    return alg, J, metric, obj.get("m_dim")


def encode_lie_algebra(alg: LieAlgebra, J, metric,
                       m_dim: Optional[int] = None) -> Dict[str, Any]:
    brackets = []
    for (i, j) in sorted(alg.table):
        comp = alg.table[(i, j)]
        brackets.append({
            "i": i, "j": j,
            "coeffs": {str(k): encode_rational(v)
                       for k, v in sorted(comp.items())},
        })
    out = {
        "dim": alg.dim,
        "brackets": brackets,
        "J": [[encode_rational(x) for x in row] for row in J],
        "metric": [[encode_rational(x) for x in row] for row in metric],
    }
    if m_dim is not None:
        out["m_dim"] = m_dim
    return out


# -- matrix families -------------------------------------------------------------

def decode_family(obj: Any) -> Tuple[int, List[List[List[int]]]]:
    if not isinstance(obj, dict):
        raise SchemaError("family spec must be an object")
    unknown = set(obj) - {"n", "generators"}
    if unknown:
        raise SchemaError(f"unknown family keys: {sorted(unknown)}")
    n = obj.get("n")
    gens = obj.get("generators")
    if not isinstance(n, int) or not isinstance(gens, list) or not gens:
        raise SchemaError("family spec needs n and a nonempty generators array")
    out = []
    for g in gens:
        out.append([[int(x) for x in row] for row in g])
    return n, out
