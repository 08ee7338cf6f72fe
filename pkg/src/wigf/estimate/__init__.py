"""Non-parametric and parametric estimation of the residual generating
function with weight x."""
from ._backend import BACKEND
from .experiment import (
    ExperimentGrid,
    bootstrap_bias_mse,
    exponential_truth,
    mle_rate_exponential,
    monte_carlo_parametric,
    parametric_grid,
    parametric_residual_gwigf_exp,
    simulation_grid,
)
from .kde import KdeSpec, kde_pdf, kde_survival, np_residual_gwigf, silverman_bandwidth

__all__ = [
    "BACKEND",
    "ExperimentGrid",
    "KdeSpec",
    "bootstrap_bias_mse",
    "exponential_truth",
    "kde_pdf",
    "kde_survival",
    "mle_rate_exponential",
    "monte_carlo_parametric",
    "np_residual_gwigf",
    "parametric_grid",
    "parametric_residual_gwigf_exp",
    "silverman_bandwidth",
    "simulation_grid",
]
