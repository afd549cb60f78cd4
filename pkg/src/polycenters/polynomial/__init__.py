"""Exact polynomial algebra over the rationals."""

from fractions import Fraction as Rational

from .bivariate import BiPoly, HomoPoly, homogeneous_parts
from .elimination import (
    LinearFactor,
    gcd,
    has_common_component,
    homo_real_linear_factors,
    resultant,
)
from .grammar import format_poly, from_json_terms, parse_number, parse_poly, to_json_terms
from .univariate import (
    RealRoot,
    UniPoly,
    count_real_roots,
    real_roots,
    squarefree_decomposition,
    uni_gcd,
)

__all__ = [
    "Rational",
    "BiPoly",
    "HomoPoly",
    "UniPoly",
    "RealRoot",
    "LinearFactor",
    "homogeneous_parts",
    "resultant",
    "gcd",
    "has_common_component",
    "real_roots",
    "count_real_roots",
    "squarefree_decomposition",
    "uni_gcd",
    "homo_real_linear_factors",
    "parse_poly",
    "parse_number",
    "format_poly",
    "to_json_terms",
    "from_json_terms",
]
