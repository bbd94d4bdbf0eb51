"""Multivariate normal orthant probabilities via first-passage-time Monte Carlo.

The heavy lifting happens in the C++ extension: stationary Gaussian paths are
synthesized spectrally (Davies-Harte) or recursively (Durbin-Levinson), first
boundary crossings are tallied, and the survival curve 1 - P(T <= k) estimates
the orthant probability P(X_1 < S_1, ..., X_k < S_k). Genz and GHK reference
estimators and Slepian upper bounds are included for cross-validation.
"""

from ._orthantmc import (
    Boundary,
    CovarianceSequence,
    GenzResult,
    GhkResult,
    PathBatch,
    SlepianBound,
    SurvivalCurve,
    __version__,
    arfima_covariance,
    estimate_orthant_fpt,
    genz_estimate,
    ghk_estimate,
    load_covariance_file,
    normal_cdf,
    normal_pdf,
    normal_quantile,
    sample_paths,
    slepian_bound,
    tabulated_covariance,
)

__all__ = [
    "Boundary",
    "CovarianceSequence",
    "GenzResult",
    "GhkResult",
    "PathBatch",
    "SlepianBound",
    "SurvivalCurve",
    "__version__",
    "arfima_covariance",
    "estimate_orthant_fpt",
    "genz_estimate",
    "ghk_estimate",
    "load_covariance_file",
    "normal_cdf",
    "normal_pdf",
    "normal_quantile",
    "sample_paths",
    "slepian_bound",
    "tabulated_covariance",
]
