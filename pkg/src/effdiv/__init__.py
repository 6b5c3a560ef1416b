"""Effective polynomial division on affine varieties.

Exact symbolic pipeline (polynomials, Groebner bases, free resolutions,
degree bounds, division certificates) plus numerical evaluation of the
Cauchy-Fantappie kernels behind the division formulas.
"""

from .poly import RatPoly, parse_poly, format_poly, homogenize, dehomogenize
from .groebner import GroebnerBasis, groebner_basis, normal_form
from .resolution import Resolution, minimal_free_resolution, regularity
from .bounds import BoundParams, DegreeBound, rho_bound_general, rho_bound_smooth, jelonek_bound
from .division import (
    Certificate,
    DivisionProblem,
    Infeasible,
    nullstellensatz_certificate,
    solve_certificate,
    verify_certificate,
)

__all__ = [
    "RatPoly", "parse_poly", "format_poly", "homogenize", "dehomogenize",
    "GroebnerBasis", "groebner_basis", "normal_form",
    "Resolution", "minimal_free_resolution", "regularity",
    "BoundParams", "DegreeBound", "rho_bound_general", "rho_bound_smooth", "jelonek_bound",
    "Certificate", "DivisionProblem", "Infeasible",
    "nullstellensatz_certificate", "solve_certificate", "verify_certificate",
]
