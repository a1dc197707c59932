"""Exact rational arithmetic, polynomials, and certified root isolation."""

from .composed import RealRootIdentifier, composed_product_poly
from .croots import ComplexAlgebraic, isolate_roots
from .eigen import MagnitudeEntry, eigenvalue_magnitude_profile
from .interval import (Box, CertifiedInterval, atan2_interval, exp_interval,
                       is_perfect_square, log_interval, pi_interval,
                       sqrt_bounds, sqrt_interval)
from .intpoly import IntPolynomial, discriminant, resultant
from .irreducible import is_irreducible, kronecker_factor
from .sturm import RealAlgebraic, count_real_roots, isolate_real_roots

__all__ = [
    "Box", "CertifiedInterval", "ComplexAlgebraic", "IntPolynomial",
    "MagnitudeEntry", "RealAlgebraic", "RealRootIdentifier",
    "atan2_interval", "composed_product_poly", "count_real_roots",
    "discriminant", "eigenvalue_magnitude_profile", "exp_interval",
    "is_irreducible", "is_perfect_square", "isolate_real_roots",
    "isolate_roots", "kronecker_factor", "log_interval", "pi_interval",
    "resultant", "sqrt_bounds", "sqrt_interval",
]
