"""Gini coefficient, exact finite-sample bias of its estimator, plug-in correction."""

from ._core import (  # noqa: F401
    ConvergenceError,
    DomainError,
    Family,
    Model,
    bias,
    brute_force_expected_ghat,
    cdf,
    corrected_estimate,
    estimate_gini,
    estimate_gini_naive,
    expected_ghat,
    expected_ghat_generic,
    gini_exact,
    gini_series,
    geometric_expected_ghat,
    laplace,
    mean,
    poisson_expected_ghat,
    run_mc,
    sample,
    tilt,
)

__version__ = "0.1.0"
