"""Gaussian kernel density estimation and the kernel plug-in estimator of the
residual generating function with weight x."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..dist import Sample
from ..errors import DomainError, EstimationError
from ..integrate import quad
from ._backend import kernels

__all__ = [
    "KdeSpec",
    "silverman_bandwidth",
    "kde_pdf",
    "kde_survival",
    "np_residual_gwigf",
    "NORMALIZERS",
    "MIN_SURVIVAL",
]

NORMALIZERS = ("kde", "empirical")
MIN_SURVIVAL = 1e-10
# beyond this many bandwidths the Gaussian kernel is below 1e-15
TAIL_BANDWIDTHS = 8.0


def _as_data(s) -> np.ndarray:
    v = np.asarray(s.values if isinstance(s, Sample) else s, dtype=float).ravel()
    if v.size == 0:
        raise EstimationError("sample is empty")
    if not np.all(np.isfinite(v)):
        raise DomainError("sample contains non-finite values")
    return np.ascontiguousarray(np.sort(v))


def silverman_bandwidth(s) -> float:
    """0.9 min(sd, IQR/1.34) n^(-1/5)."""
    x = _as_data(s)
    if x.size < 2:
        raise EstimationError("bandwidth rule needs at least two observations")
    sd = float(np.std(x, ddof=1))
    q75, q25 = np.percentile(x, [75, 25])
    spread = min(sd, (q75 - q25) / 1.34)
    if not spread > 0:
        # fall back to the standard deviation when the IQR collapses
        spread = sd
    if not spread > 0:
        raise EstimationError("sample has zero spread; bandwidth undefined")
    return 0.9 * spread * x.size ** -0.2


@dataclass(frozen=True)
class KdeSpec:
    """A sample, a bandwidth (a positive number or ``"silverman"``) and the
    kernel id.  Only the Gaussian kernel is implemented."""

    sample: object
    bandwidth: float | str = "silverman"
    kernel: str = "gaussian"
    data: np.ndarray = field(init=False, repr=False, compare=False)
    b: float = field(init=False)

    def __post_init__(self):
        if self.kernel != "gaussian":
            raise DomainError(f"unsupported kernel {self.kernel!r}")
        data = _as_data(self.sample)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        if isinstance(self.bandwidth, str):
            if self.bandwidth != "silverman":
                raise DomainError(f"unknown bandwidth rule {self.bandwidth!r}")
            b = silverman_bandwidth(data)
        else:
            b = float(self.bandwidth)
            if not (b > 0 and math.isfinite(b)):
                raise DomainError("bandwidth must be positive")
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.data.size


def kde_pdf(spec: KdeSpec, x):
    """Kernel density estimate at ``x`` (scalar or array)."""
    xa = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=float)))
    out = kernels.gauss_kde(xa, spec.data, spec.b)
    return out if np.ndim(x) else float(out[0])


def kde_survival(spec: KdeSpec, t: float) -> float:
    """int_t^inf of the kernel density estimate."""
    return float(kernels.gauss_tail(float(t), spec.data, spec.b))


def np_residual_gwigf(spec: KdeSpec, beta: float, t: float, normalizer: str = "kde",
                      rtol: float = 1e-9) -> float:
    """Kernel estimate of int_t x (f(x)/S(t))^beta dx.

    ``normalizer`` selects S(t): ``"kde"`` integrates the density estimate
    over [t, inf); ``"empirical"`` uses the fraction of observations above t.
    The integral stops at max(sample) + 8 bandwidths.
    """
    beta = float(beta)
    if not (beta >= 1 and math.isfinite(beta)):
        raise DomainError(f"beta must be >= 1, got {beta}")
    t = float(t)
    if normalizer == "kde":
        surv = kde_survival(spec, t)
    elif normalizer == "empirical":
        surv = float(np.count_nonzero(spec.data > t)) / spec.n
    else:
        raise DomainError(f"unknown normalizer {normalizer!r}; use one of {NORMALIZERS}")
    upper = float(spec.data[-1]) + TAIL_BANDWIDTHS * spec.b
    if not surv > MIN_SURVIVAL or t >= upper:
        raise EstimationError(f"estimated survival at t={t} vanishes")
    log_s = math.log(surv)
    data, b = spec.data, spec.b
    # panel edges a few bandwidths apart so no kernel bump is stepped over
    step = max(4.0 * b, (upper - t) / 200.0)
    pts = np.arange(t + step, upper, step)

    def fn(x):
        return kernels.gauss_residual_integrand(np.ascontiguousarray(x), data, b, beta, log_s)

    return quad(fn, t, upper, rtol=rtol, atol=1e-14, points=pts).value
