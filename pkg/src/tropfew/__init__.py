"""Tropical curves over Puiseux series and certified counts of positive solutions."""

from .arrangement import (
    IntersectionCell,
    NonTransversalError,
    arrangement,
    bound_report,
    classify_cell,
    discrete_mixed_volume,
    intersect_curves,
    positive_transversal_points,
)
from .field import LaurentPoly, LaurentSystem, PuiseuxScalar, is_positive, ps_arith, ps_leading
from .reduction import (
    DegenerateSupportError,
    NormalizedSystem,
    build_fan,
    cone_positivity,
    normalize,
    reduced_polynomial,
    reduced_system,
    trinomial_to_univariate,
)
from .tropical import (
    TropicalCurve,
    check_balancing,
    check_duality,
    corner_locus,
    positive_part,
    regular_subdivision,
    tropicalize,
)

__all__ = [
    "arrangement",
    "bound_report",
    "build_fan",
    "check_balancing",
    "check_duality",
    "classify_cell",
    "cone_positivity",
    "corner_locus",
    "DegenerateSupportError",
    "discrete_mixed_volume",
    "intersect_curves",
    "IntersectionCell",
    "is_positive",
    "LaurentPoly",
    "LaurentSystem",
    "NonTransversalError",
    "normalize",
    "NormalizedSystem",
    "positive_part",
    "positive_transversal_points",
    "ps_arith",
    "ps_leading",
    "PuiseuxScalar",
    "reduced_polynomial",
    "reduced_system",
    "regular_subdivision",
    "trinomial_to_univariate",
    "TropicalCurve",
    "tropicalize",
]

__version__ = "0.1.0"
