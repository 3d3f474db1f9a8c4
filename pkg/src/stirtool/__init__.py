"""Exact computation and verification of new type degenerate Stirling numbers."""

from .exact import LambdaPoly, poly_eval, poly_substitute_negated
from .series import TruncatedSeries
from .stirling import Family, StirlingTriangle, build_triangle

__all__ = [
    "Family",
    "LambdaPoly",
    "StirlingTriangle",
    "TruncatedSeries",
    "build_triangle",
    "poly_eval",
    "poly_substitute_negated",
]
