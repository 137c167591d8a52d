"""Exact arithmetic: Gaussian rationals, a short quadratic tower, polynomials, series."""

from .numbers import (
    I,
    QI,
    FieldElement,
    GaussianRational,
    NumberField,
    adjoin_root,
    common_field,
)
from .poly import INFINITE_ORDER, BiPoly, UPoly, bipoly_divmod, format_poly, poly_gcd, upoly_gcd
from .roots import RootsResult, squarefree_decomposition, univariate_roots
from .series import TruncatedSeries


def poly_translate(p: BiPoly, cx, cy) -> BiPoly:
    """Return p(x + cx, y + cy)."""
    return p.translate(cx, cy)


X = BiPoly.x()
Y = BiPoly.y()

__all__ = [
    "I",
    "QI",
    "X",
    "Y",
    "INFINITE_ORDER",
    "BiPoly",
    "FieldElement",
    "GaussianRational",
    "NumberField",
    "RootsResult",
    "TruncatedSeries",
    "UPoly",
    "adjoin_root",
    "bipoly_divmod",
    "common_field",
    "format_poly",
    "poly_gcd",
    "poly_translate",
    "squarefree_decomposition",
    "univariate_roots",
    "upoly_gcd",
]
