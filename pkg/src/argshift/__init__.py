"""Exact computation of argument-shift commutative subalgebras over Q."""

from .errors import (ArgshiftError, CheckFailed, InputError, LineInSingError, RecursionBroken,
                     SingularPointError)
from .lie import LieAlgebra, annihilator, index, poisson_matrix, validate
from .poly import Poly, UniPoly, format_poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "ArgshiftError", "CheckFailed", "InputError", "LineInSingError", "RecursionBroken",
    "SingularPointError", "LieAlgebra", "annihilator", "index", "poisson_matrix", "validate",
    "Poly", "UniPoly", "format_poly", "parse_poly",
]
