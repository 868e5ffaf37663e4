"""Exact Dirichlet posterior moments and integration over the probability simplex.

Bin indices passed to ``log_kernel`` and ``covariance`` are 0-based.
"""

from ._core import (
    PRIOR_GRAMMAR_VERSION,
    NumericalError,
    PriorEvaluationError,
    PriorExpression,
    PriorSyntaxError,
    angles_to_simplex,
    covariance,
    integrate,
    integrate_separable,
    log_beta,
    log_factorial,
    log_gamma,
    log_jacobian,
    log_kernel,
    log_normalizer,
    means,
    moment,
    nested_oracle,
    simplex_to_angles,
    skewnesses,
    std_devs,
    variances,
)

__version__ = "0.1.0"

__all__ = [
    "PRIOR_GRAMMAR_VERSION",
    "NumericalError",
    "PriorEvaluationError",
    "PriorExpression",
    "PriorSyntaxError",
    "angles_to_simplex",
    "covariance",
    "integrate",
    "integrate_separable",
    "log_beta",
    "log_factorial",
    "log_gamma",
    "log_jacobian",
    "log_kernel",
    "log_normalizer",
    "means",
    "moment",
    "nested_oracle",
    "simplex_to_angles",
    "skewnesses",
    "std_devs",
    "variances",
]
