"""Weighted relative information generating function
R^w_beta(X, Y) = int w f^beta g^(1-beta), and the divergences derived from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import Distribution, Numeric, Transformed, anchor_points
from .errors import DomainError, SupportMismatchError
from .igf import check_beta
from .integrate import quad
from .maps import MonotoneMap
from .weights import ONE, Weight

__all__ = [
    "RigfQuery",
    "check_support",
    "gwrigf",
    "gwrigf_derivative",
    "weighted_kl",
    "weighted_j_divergence",
    "gwrigf_transformed",
    "cross_informational_energy",
]


@dataclass(frozen=True)
class RigfQuery:
    f: Distribution
    g: Distribution
    weight: Weight = ONE
    beta: float = 1.0

    def value(self) -> float:
        return gwrigf(self.f, self.g, self.weight, self.beta)


def _probe_points(d: Distribution, m: int = 64) -> np.ndarray:
    u = (np.arange(m) + 0.5) / m
    if isinstance(d, Numeric):
        # quantiles of a numeric law cost a root solve each; probe in a
        # mapped coordinate instead
        lo, hi = d.support
        x = lo + u / (1.0 - u) if math.isinf(hi) else lo + u * (hi - lo)
        return x[np.atleast_1d(d.density(x)) > 0]
    return np.atleast_1d(d.quantile(u))


def check_support(f: Distribution, g: Distribution, m: int = 64) -> None:
    """Raise :class:`SupportMismatchError` if g vanishes at any of ``m``
    quantiles of f."""
    x = _probe_points(f, m)
    gx = np.atleast_1d(g.density(x))
    if np.any(gx <= 0):
        bad = x[gx <= 0][0]
        raise SupportMismatchError(
            f"reference density {g.spec} vanishes at x={bad:.6g} where {f.spec} is positive")


def _common(f: Distribution, g: Distribution) -> tuple[float, float, list[float]]:
    flo, fhi = f.support
    glo, ghi = g.support
    lo, hi = max(flo, glo), min(fhi, ghi)
    if not lo < hi:
        raise SupportMismatchError(f"supports of {f.spec} and {g.spec} do not overlap")
    pts = sorted({p for p in (*anchor_points(f), *anchor_points(g)) if lo < p < hi})
    return lo, hi, pts


def _log_pair(f, g, x):
    lf = np.atleast_1d(f.logpdf(x))
    lg = np.atleast_1d(g.logpdf(x))
    return lf, lg


def _rigf_integrand(f, g, w, beta, k=0):
    def fn(x):
        lf, lg = _log_pair(f, g, x)
        # zero wherever a factor with a positive exponent vanishes
        dead = np.zeros(lf.shape, dtype=bool)
        if beta > 0:
            dead |= np.isneginf(lf)
        if beta < 1:
            dead |= np.isneginf(lg)
        lf = np.where(dead, 0.0, lf)
        lg = np.where(dead, 0.0, lg)
        with np.errstate(invalid="ignore", over="ignore", under="ignore"):
            expo = beta * lf if beta == 1 else beta * lf + (1.0 - beta) * lg
            core = np.exp(expo)
            if k:
                core = core * (lf - lg) ** k
        return np.where(dead, 0.0, w(x) * core)
    return fn


def _check_for(f, g, beta):
    if beta > 1:
        check_support(f, g)
    elif beta < 0:
        check_support(g, f)


def gwrigf(f: Distribution, g: Distribution, w: Weight, beta: float, *,
           public: bool = True) -> float:
    """R^w_beta(X, Y).  With ``public=False`` any real beta is accepted, which
    is what the skew-symmetry R_beta(X, Y) = R_{1-beta}(Y, X) needs."""
    beta = float(beta)
    if public:
        check_beta(beta)
    elif not math.isfinite(beta):
        raise DomainError("beta must be finite")
    _check_for(f, g, beta)
    lo, hi, pts = _common(f, g)
    if beta >= 1:
        lo, hi = max(lo, f.support[0]), min(hi, f.support[1])
    return quad(_rigf_integrand(f, g, w, beta), lo, hi, points=pts).value


def gwrigf_derivative(f: Distribution, g: Distribution, w: Weight, beta: float, k: int, *,
                      public: bool = True) -> float:
    """k-th beta-derivative: int w f^beta g^(1-beta) (log f/g)^k."""
    if k < 1 or int(k) != k:
        raise DomainError("k must be a positive integer")
    beta = float(beta)
    if public:
        check_beta(beta)
    _check_for(f, g, beta if beta != 1 else 1.5)
    lo, hi, pts = _common(f, g)
    return quad(_rigf_integrand(f, g, w, beta, k), lo, hi, points=pts).value


def weighted_kl(f: Distribution, g: Distribution, w: Weight) -> float:
    """int w f log(f/g)."""
    return gwrigf_derivative(f, g, w, 1.0, 1)


def weighted_j_divergence(f: Distribution, g: Distribution, w: Weight) -> float:
    """Symmetrised weighted KL: KL^w(f, g) + KL^w(g, f)."""
    return weighted_kl(f, g, w) + weighted_kl(g, f, w)


def gwrigf_transformed(f: Distribution, g: Distribution, w: Weight, psi: MonotoneMap,
                       beta: float) -> float:
    """R^w_beta(psi(X), psi(Y)) from the original laws:
    int w(psi(x)) f^beta(x) g^(1-beta)(x) dx.  The Jacobians cancel, so
    increasing and decreasing maps give the same (positive) expression."""
    beta = check_beta(beta, public=False)
    if not isinstance(psi, MonotoneMap):
        raise DomainError("psi must be a strictly monotone map")
    Transformed(f, psi)
    Transformed(g, psi)
    _check_for(f, g, beta)
    lo, hi, pts = _common(f, g)
    inner = _rigf_integrand(f, g, ONE, beta)

    def fn(x):
        return w(np.atleast_1d(psi(x))) * inner(x)

    return quad(fn, lo, hi, points=pts).value


def cross_informational_energy(f: Distribution, g: Distribution, w: Weight,
                               beta: float, *, public: bool = True) -> float:
    """Weighted beta-cross informational energy int w sqrt(f^beta g^beta)."""
    beta = check_beta(beta, public)
    lo, hi, pts = _common(f, g)

    def fn(x):
        lf, lg = _log_pair(f, g, x)
        dead = np.isneginf(lf) | np.isneginf(lg)
        with np.errstate(invalid="ignore", over="ignore", under="ignore"):
            core = np.exp(0.5 * beta * (lf + lg))
        return np.where(dead, 0.0, w(x) * core)

    return quad(fn, lo, hi, points=pts).value
