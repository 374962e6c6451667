"""Exact rationals, row reduction and multivariate polynomials."""

from .rational import Rational, format_rational, parse_rational, to_rational
from .linalg import (
    RowSpace,
    inverse,
    rank,
    rank_and_kernel,
    transpose,
)
from .poly import (
    Polynomial,
    PolyIdeal,
    ideal_degree_piece,
    monomials,
)

__all__ = [
    "Rational",
    "format_rational",
    "parse_rational",
    "to_rational",
    "RowSpace",
    "inverse",
    "rank",
    "rank_and_kernel",
    "transpose",
    "Polynomial",
    "PolyIdeal",
    "ideal_degree_piece",
    "monomials",
]
