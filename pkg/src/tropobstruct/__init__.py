"""Superabundant tropical curves: obstruction spaces, well-spacedness and smoothability."""

from .curve_model import TropicalCurve, validate_curve, genus, transform_curve
from .errors import DomainError, ParseError, TropicError

__version__ = "0.1.0"

__all__ = [
    "TropicalCurve",
    "validate_curve",
    "genus",
    "transform_curve",
    "TropicError",
    "DomainError",
    "ParseError",
]
