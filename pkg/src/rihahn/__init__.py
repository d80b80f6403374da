"""Exact arithmetic for the R_I Hahn biorthogonal system.

Everything is computed over the rationals (or, for irrational powers of q,
an exact number field), so identities are checked with ``==``.
"""
from .errors import (BoundaryLeak, InvalidParameters, NonTerminating,
                     PoleInDenominator, RIHahnError, ZeroDivisor)
from .kernel import (HahnParameterSet, ParameterSet, as_rational,
                     basic_hyp_terminating, format_rational, hyp_terminating,
                     pochhammer, q_pochhammer)
from .families import V, askey_P, family_table, hahn, monic_p, P
from .biorthogonality import gram_matrix, normalization_h, weight, weights
from .gevp import solve_P_coefficients, solve_V_coefficients

__version__ = "0.1.0"

__all__ = [
    "RIHahnError", "InvalidParameters", "NonTerminating", "PoleInDenominator",
    "BoundaryLeak", "ZeroDivisor", "ParameterSet", "HahnParameterSet",
    "as_rational", "format_rational", "pochhammer", "q_pochhammer",
    "hyp_terminating", "basic_hyp_terminating", "P", "V", "hahn", "monic_p",
    "askey_P", "family_table", "weight", "weights", "normalization_h",
    "gram_matrix", "solve_P_coefficients", "solve_V_coefficients",
]
