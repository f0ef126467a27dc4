"""Exact evaluation and claim auditing for the weighted Catalan convolution

    S_n(a) = sum_{k=0}^{n} C(2k,k) C(2(n-k),n-k) a^k.
"""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError
from .evaluate import (
    EvalRequest,
    EvalResult,
    Method,
    evaluate,
    s_direct,
    s_hypergeometric,
    s_identity_proof_form,
    s_narayana,
    s_recurrence,
    s_series,
    s_weighted_catalan,
)

__all__ = [
    "__version__",
    "ConvergenceError",
    "DomainError",
    "EvalRequest",
    "EvalResult",
    "Method",
    "evaluate",
    "s_direct",
    "s_hypergeometric",
    "s_identity_proof_form",
    "s_narayana",
    "s_recurrence",
    "s_series",
    "s_weighted_catalan",
]
