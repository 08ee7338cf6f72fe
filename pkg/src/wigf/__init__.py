"""Weighted information generating functions.

Quadrature-backed evaluation of I^w_beta(X) = int w f^beta and the relative
version R^w_beta(X, Y) = int w f^beta g^(1-beta), their residual-lifetime
forms, the identities and bounds linking them, kernel and parametric
estimators, and maximum-likelihood goodness of fit.
"""
from .dist import Distribution, Sample, parse_model
from .errors import (DivergenceError, DomainError, EstimationError, InfiniteMeanError,
                     InputError, IntegrationError, NonConvergenceError, SupportMismatchError,
                     UnsupportedModelError, WigfError)
from .igf import evaluate, gwigf, weighted_entropy, weighted_extropy, weighted_varentropy
from .integrate import quad, tolerance
from .maps import MonotoneMap, parse_map
from .residual import residual_gwigf, residual_gwrigf
from .rigf import gwrigf, weighted_j_divergence, weighted_kl
from .weights import ONE, X, Weight, parse_weight

__version__ = "0.1.0"

__all__ = [
    "Distribution", "Sample", "parse_model",
    "Weight", "ONE", "X", "parse_weight", "MonotoneMap", "parse_map",
    "gwigf", "evaluate", "weighted_entropy", "weighted_extropy", "weighted_varentropy",
    "gwrigf", "weighted_kl", "weighted_j_divergence",
    "residual_gwigf", "residual_gwrigf",
    "quad", "tolerance",
    "WigfError", "DomainError", "UnsupportedModelError", "SupportMismatchError",
    "IntegrationError", "NonConvergenceError", "DivergenceError", "InfiniteMeanError",
    "EstimationError", "InputError",
]
