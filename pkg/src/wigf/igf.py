"""Weighted information generating function I^w_beta(X) = int w f^beta and
the measures derived from it (weighted entropy, extropy, varentropy),
its bounds, and its behaviour under transformations and convolution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dist import Distribution, Transformed, anchor_points
from .errors import DomainError
from .integrate import quad
from .maps import MonotoneMap
from .report import BoundsReport
from .weights import ONE, X, Weight

__all__ = [
    "IgfQuery",
    "EvalResult",
    "integrate_over",
    "gwigf",
    "evaluate",
    "gwigf_discrete",
    "gwigf_derivative",
    "weighted_entropy",
    "weighted_entropy_k",
    "weighted_extropy",
    "weighted_varentropy",
    "gwigf_series",
    "bounds_cs",
    "bounds_hazard",
    "gwigf_transformed",
    "convolution_density",
    "convolution_gwigf_bound",
    "ConvolutionReport",
    "ordering_check",
    "OrderingReport",
]


def check_beta(beta: float, public: bool = True) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or beta <= 0:
        raise DomainError(f"beta must be a positive number, got {beta}")
    if public and beta < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    return beta


def integrate_over(d: Distribution, fn, lo: float | None = None, *, rtol=None, atol=None) -> float:
    """Integral of ``fn`` over the support of ``d`` (from ``lo`` if given),
    using the model's break points as panel edges."""
    a, b = d.support
    if lo is not None:
        a = max(a, float(lo))
    pts = [p for p in anchor_points(d) if a < p < b]
    return quad(fn, a, b, rtol=rtol, atol=atol, points=pts).value


def density_pow(d: Distribution, x: np.ndarray, beta: float) -> np.ndarray:
    """f(x)^beta computed as exp(beta log f) (0 where f = 0)."""
    lf = np.atleast_1d(d.logpdf(x))
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        out = np.exp(beta * lf)
    return np.where(np.isneginf(lf), 0.0, out)


def _log_density_terms(d: Distribution, x: np.ndarray):
    lf = np.atleast_1d(d.logpdf(x))
    dead = np.isneginf(lf)
    return np.where(dead, 0.0, lf), dead


@dataclass(frozen=True)
class IgfQuery:
    """A single evaluation request for I^w_beta(X)."""

    dist: Distribution
    weight: Weight = X
    beta: float = 1.0
    method: str = "quad"

    def __post_init__(self):
        check_beta(self.beta)
        if self.method not in ("closed", "quad", "both"):
            raise DomainError(f"unknown method {self.method!r}")

    def value(self) -> float:
        return evaluate(self.dist, self.weight, self.beta, self.method).value


def gwigf(d: Distribution, w: Weight, beta: float, *, public: bool = True,
          rtol: float | None = None) -> float:
    """I^w_beta(X) = int w(x) f(x)^beta dx by adaptive quadrature.

    ``public=False`` admits any beta > 0 (escort and mixture identities need
    exponents below one).  A divergent integral raises
    :class:`~wigf.errors.DivergenceError`.
    """
    beta = check_beta(beta, public)
    return integrate_over(d, lambda x: w(x) * density_pow(d, x, beta), rtol=rtol)


@dataclass(frozen=True)
class EvalResult:
    value: float
    method: str
    quad_value: float | None = None
    closed_value: float | None = None
    paper_flagged: bool = False
    published_value: float | None = None
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {"value": self.value, "method": self.method}
        if self.quad_value is not None:
            out["quad_value"] = self.quad_value
        if self.closed_value is not None:
            out["closed_value"] = self.closed_value
        out["paper_flagged"] = self.paper_flagged
        if self.published_value is not None:
            out["published_value"] = self.published_value
        out.update(self.extra)
        return out


def evaluate(d: Distribution, w: Weight, beta: float, method: str = "quad") -> EvalResult:
    """Evaluate I^w_beta(X) by quadrature, the closed-form catalogue, or both."""
    from .closed_forms import gwigf_closed  # local: closed_forms imports this module

    check_beta(beta)
    if method == "quad":
        v = gwigf(d, w, beta)
        return EvalResult(v, "quad", quad_value=v)
    cf = gwigf_closed(d, w, beta)
    if method == "closed":
        return EvalResult(cf.value, "closed", closed_value=cf.value, paper_flagged=cf.flagged,
                          published_value=cf.published if cf.flagged else None)
    if method == "both":
        q = gwigf(d, w, beta)
        return EvalResult(q, "both", quad_value=q, closed_value=cf.value,
                          paper_flagged=cf.flagged,
                          published_value=cf.published if cf.flagged else None,
                          extra={"rel_gap": abs(q - cf.value) / max(abs(q), 1e-300)})
    raise DomainError(f"unknown method {method!r}")


def gwigf_discrete(p: Sequence[float], w: Sequence[float], beta: float) -> float:
    """sum_i w_i p_i^beta for a probability vector ``p``."""
    p = np.asarray(p, dtype=float)
    w = np.asarray(w, dtype=float)
    if p.shape != w.shape or p.ndim != 1 or p.size == 0:
        raise DomainError("p and w must be non-empty vectors of equal length")
    if np.any(p <= 0) or abs(math.fsum(p) - 1.0) > 1e-9:
        raise DomainError("p must be a strictly positive probability vector")
    if np.any(w < 0):
        raise DomainError("weights must be non-negative")
    beta = check_beta(beta)
    return math.fsum(w * p ** beta)


def gwigf_derivative(d: Distribution, w: Weight, beta: float, k: int, *,
                     public: bool = True) -> float:
    """k-th beta-derivative: int w f^beta (log f)^k."""
    if k < 1 or int(k) != k:
        raise DomainError("k must be a positive integer")
    beta = check_beta(beta, public)

    def fn(x):
        lf, dead = _log_density_terms(d, x)
        return np.where(dead, 0.0, w(x) * density_pow(d, x, beta) * lf ** k)

    return integrate_over(d, fn)


def weighted_entropy_k(d: Distribution, w: Weight, k: int) -> float:
    """H^w_k = int w (-log f)^k f."""
    if k < 0 or int(k) != k:
        raise DomainError("k must be a non-negative integer")
    if k == 0:
        return integrate_over(d, lambda x: w(x) * d.density(x))

    def fn(x):
        lf, dead = _log_density_terms(d, x)
        return np.where(dead, 0.0, w(x) * (-lf) ** k * np.exp(lf))

    return integrate_over(d, fn)


def weighted_entropy(d: Distribution, w: Weight) -> float:
    """H^w = -int w f log f."""
    return weighted_entropy_k(d, w, 1)


def weighted_extropy(d: Distribution, w: Weight) -> float:
    """J^w = -(1/2) int w f^2."""
    return -0.5 * gwigf(d, w, 2.0)


def weighted_varentropy(d: Distribution, w: Weight) -> float:
    """E[(w log f)^2] - (E[w log f])^2, i.e. Var(w(X) log f(X))."""
    m2 = gwigf_derivative(d, w.square(), 1.0, 2)
    m1 = gwigf_derivative(d, w, 1.0, 1)
    v = m2 - m1 * m1
    # clip rounding noise only; a clearly negative value is left visible
    return 0.0 if -1e-12 * max(1.0, m2) < v < 0 else v


def gwigf_series(d: Distribution, w: Weight, beta: float, K: int) -> tuple[float, float]:
    """Partial sum of sum_k (1-beta)^k / k! H^w_k up to ``K``; also returns the
    magnitude of the last term as a convergence diagnostic."""
    beta = check_beta(beta, public=False)
    if K < 0:
        raise DomainError("truncation order must be >= 0")
    terms = []
    coef = 1.0
    for k in range(K + 1):
        if k:
            coef *= (1.0 - beta) / k
        if coef == 0.0:
            terms.append(0.0)
            continue
        terms.append(coef * weighted_entropy_k(d, w, k))
    return math.fsum(terms), abs(terms[-1])


def bounds_cs(d: Distribution, w: Weight, beta: float) -> BoundsReport:
    """Cauchy-Schwarz sandwich
    (I^{sqrt w}_{(beta+1)/2})^2 <= I^w_beta <= sqrt(I^{w^2}_{2 beta - 1})."""
    beta = check_beta(beta)
    lower = gwigf(d, w.sqrt(), 0.5 * (beta + 1.0), public=False) ** 2
    center = gwigf(d, w, beta)
    upper = math.sqrt(gwigf(d, w.square(), 2.0 * beta - 1.0, public=False))
    return BoundsReport(lower, center, upper)


def hazard_weighted_moment(d: Distribution, w: Weight, beta: float) -> float:
    """E[w(X) h(X)^beta]."""
    def fn(x):
        lf = np.atleast_1d(d.logpdf(x))
        ls = np.atleast_1d(d.log_survival(x))
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            v = w(x) * np.exp(beta * (lf - ls) + lf)
        return np.where(np.isneginf(lf), 0.0, v)

    return integrate_over(d, fn)


def bounds_hazard(d: Distribution, w: Weight, beta: float) -> BoundsReport:
    """max{0, E[w] - beta H^w} <= I^w_{beta+1} <= E[w h^beta]."""
    beta = check_beta(beta)
    ew = weighted_entropy_k(d, w, 0)
    hw = weighted_entropy(d, w)
    center = gwigf(d, w, beta + 1.0)
    upper = hazard_weighted_moment(d, w, beta)
    return BoundsReport(max(0.0, ew - beta * hw), center, upper)


def gwigf_transformed(d: Distribution, w: Weight, zeta: MonotoneMap, beta: float) -> float:
    """I^w_beta(zeta(X)) from the law of X: int w(zeta(x)) f^beta(x) |zeta'(x)|^(1-beta) dx.

    The absolute derivative is used for decreasing maps, so the result is the
    weighted generating function of the transformed variable itself.
    """
    beta = check_beta(beta, public=False)
    if not isinstance(zeta, MonotoneMap):
        raise DomainError("zeta must be a strictly monotone map")
    Transformed(d, zeta)  # validates the map against the support

    def fn(x):
        jac = np.abs(np.atleast_1d(zeta.derivative(x)))
        with np.errstate(divide="ignore", over="ignore"):
            return w(np.atleast_1d(zeta(x))) * density_pow(d, x, beta) * jac ** (1.0 - beta)

    return integrate_over(d, fn)


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------

def convolution_density(dX: Distribution, dY: Distribution, z, rtol: float = 1e-12):
    """Density of X + Y for independent X, Y, by quadrature over x."""
    zs = np.atleast_1d(np.asarray(z, dtype=float))
    xlo, xhi = dX.support
    ylo, yhi = dY.support
    out = np.empty_like(zs)
    for i, zi in enumerate(zs):
        a = max(xlo, zi - yhi)
        b = min(xhi, zi - ylo)
        if not a < b:
            out[i] = 0.0
            continue
        pts = {p for p in dX.breakpoints} | {zi - p for p in dY.breakpoints}
        pts = sorted(p for p in pts if a < p < b)
        out[i] = quad(lambda x: dX.density(x) * dY.density(zi - x), a, b,
                      rtol=rtol, atol=1e-300, points=pts).value
    return float(out[0]) if np.ndim(z) == 0 else out


@dataclass(frozen=True)
class ConvolutionReport:
    value: float
    bound: float
    satisfied: bool

    def as_dict(self):
        return {"value": self.value, "bound": self.bound, "satisfied": self.satisfied}


def convolution_gwigf_bound(dX: Distribution, dY: Distribution, beta: float) -> ConvolutionReport:
    """Compare I^x_beta(X + Y) (nested quadrature) with
    I_beta(X) I^x_beta(Y) + I^x_beta(X) I_beta(Y)."""
    beta = check_beta(beta)
    xlo, xhi = dX.support
    ylo, yhi = dY.support
    lo, hi = xlo + ylo, xhi + yhi
    pts = {xlo + yhi, xhi + ylo}
    pts |= {p + ylo for p in dX.breakpoints} | {p + yhi for p in dX.breakpoints}
    pts |= {p + xlo for p in dY.breakpoints} | {p + xhi for p in dY.breakpoints}
    pts = sorted(p for p in pts if lo < p < hi and math.isfinite(p))

    def fn(z):
        fz = convolution_density(dX, dY, z)
        return z * np.asarray(fz) ** beta

    value = quad(fn, lo, hi, points=pts).value
    bound = (gwigf(dX, ONE, beta) * gwigf(dY, X, beta)
             + gwigf(dX, X, beta) * gwigf(dY, ONE, beta))
    return ConvolutionReport(value, bound, bool(value <= bound + 1e-8))


# ---------------------------------------------------------------------------
# ordering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderingReport:
    premises_hold: bool
    premise_notes: tuple[str, ...]
    direction: str
    betas: tuple[float, ...]
    lhs: tuple[float, ...]
    rhs: tuple[float, ...]
    holds: bool
    first_violation: float | None

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _grid_points(dX: Distribution, dY: Distribution, m: int = 64) -> np.ndarray:
    u = (np.arange(m) + 0.5) / m
    pts = np.concatenate([np.atleast_1d(dX.quantile(u)), np.atleast_1d(dY.quantile(u))])
    return np.unique(pts)


def ordering_check(dX: Distribution, dY: Distribution, w1: Weight, w2: Weight,
                   betas: Sequence[float] = (1.0, 1.5, 2.0, 3.0), m: int = 64) -> OrderingReport:
    """Check the dispersive-order comparison of I^{w1}_beta(X) and I^{w2}_beta(Y).

    Premises (on grids): w1 increasing, w1 >= w2 (or <=), and
    f(F^-1(u)) >= g(G^-1(u)) (X <=disp Y) or the reverse.  When they hold the
    expected inequality is tested at every beta; a failure is reported as
    ``holds=False`` with the first offending beta.
    """
    notes = []
    xs = _grid_points(dX, dY, m)
    v1, v2 = np.atleast_1d(w1(xs)), np.atleast_1d(w2(xs))
    slack = 1e-12
    inc = bool(np.all(np.diff(v1) >= -slack * np.maximum(1.0, np.abs(v1[1:]))))
    if not inc:
        notes.append("w1 is not increasing on the grid")
    ge = bool(np.all(v1 >= v2 - slack))
    le = bool(np.all(v1 <= v2 + slack))
    u = (np.arange(m) + 0.5) / m
    fx = np.atleast_1d(dX.density(dX.quantile(u)))
    gy = np.atleast_1d(dY.density(dY.quantile(u)))
    disp_le = bool(np.all(fx >= gy - slack))  # X <=disp Y
    disp_ge = bool(np.all(fx <= gy + slack))
    if ge and disp_le:
        direction = ">="
    elif le and disp_ge:
        direction = "<="
    else:
        direction = "none"
        if not (ge or le):
            notes.append("w1 and w2 are not pointwise ordered")
        else:
            notes.append("dispersive order does not match the weight order")
    premises = inc and direction != "none"
    lhs, rhs = [], []
    first = None
    for b in betas:
        a_ = gwigf(dX, w1, b)
        c_ = gwigf(dY, w2, b)
        lhs.append(a_)
        rhs.append(c_)
        tol = 1e-9 * max(1.0, abs(a_), abs(c_))
        bad = (direction == ">=" and a_ < c_ - tol) or (direction == "<=" and a_ > c_ + tol)
        if premises and bad and first is None:
            first = float(b)
    return OrderingReport(premises, tuple(notes), direction, tuple(float(b) for b in betas),
                          tuple(lhs), tuple(rhs), first is None, first)
