"""Certified real solving: univariate isolation, bivariate boxes, generalized powers."""

from .bivariate import (
    CertifiedBox,
    IrrationalSpecializationError,
    RealSystem,
    SolveReport,
    ZeroResultantError,
    solve_positive,
    specialize_t,
)
from .genpow import (
    GenPowCount,
    GenPowerCurve,
    IndeterminateError,
    PhiFunction,
    PowerConstant,
    count_genpow_solutions,
)
from .univariate import NotSquarefreeError, UniPoly, isolate_real_roots
from .verify import verify_paper

__all__ = [
    "CertifiedBox", "IrrationalSpecializationError", "RealSystem", "SolveReport",
    "ZeroResultantError", "solve_positive", "specialize_t", "GenPowCount", "GenPowerCurve",
    "IndeterminateError", "PhiFunction", "PowerConstant", "count_genpow_solutions",
    "NotSquarefreeError", "UniPoly", "isolate_real_roots", "verify_paper",
]
