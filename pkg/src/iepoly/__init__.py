"""Exact inclusion-exclusion polynomial arithmetic and height analysis."""

from .analysis import (
    ConstantResult,
    HeightReport,
    coprime_tuples,
    height_report,
    limit_constant,
    normalized_ratio,
    normalizer,
    predicted_ratio,
    search_max_ratio,
)
from .construction import (
    CongruenceFamily,
    CongruenceReport,
    CoprimalityTrace,
    HeightBound,
    check_congruence,
    congruence_family,
    coprimality_trace,
    height_lower_bound,
)
from .core import (
    CoprimeTuple,
    ExpandOptions,
    FactorSystem,
    IEPolynomial,
    degree_of,
    eval_at_one,
    expand,
    factor_system,
    height,
    is_palindromic,
    validate_tuple,
)
from .oracle import DensePoly, dense_mul, exact_div, oracle_expand, poly

__all__ = [
    "ConstantResult",
    "CongruenceFamily",
    "CongruenceReport",
    "CoprimalityTrace",
    "CoprimeTuple",
    "DensePoly",
    "ExpandOptions",
    "FactorSystem",
    "HeightBound",
    "HeightReport",
    "IEPolynomial",
    "check_congruence",
    "congruence_family",
    "coprimality_trace",
    "coprime_tuples",
    "degree_of",
    "dense_mul",
    "eval_at_one",
    "exact_div",
    "expand",
    "factor_system",
    "height",
    "height_lower_bound",
    "height_report",
    "is_palindromic",
    "limit_constant",
    "normalized_ratio",
    "normalizer",
    "oracle_expand",
    "poly",
    "predicted_ratio",
    "search_max_ratio",
    "validate_tuple",
]

__version__ = "0.1.0"
