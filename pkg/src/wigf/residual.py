"""Residual-lifetime versions of the generating functions.

For an age t with S(t) > 0 the residual lifetime has density f(x)/S(t) on
x > t, and

    I^w_beta(X; t) = int_t w(x) (f(x)/S(t))^beta dx.

Ages below the support are clamped to its lower end; ages where the survival
has effectively vanished are rejected because the definition divides by it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dist import Distribution, Transformed, anchor_points
from .errors import DomainError, SupportMismatchError
from .igf import check_beta
from .integrate import quad
from .maps import MonotoneMap
from .report import IdentityReport
from .rigf import _common, _rigf_integrand, check_support
from .transforms import equilibrium, ph
from .weights import ONE, X, Weight

__all__ = [
    "ResidualQuery",
    "check_age",
    "residual_gwigf",
    "residual_derivative_t",
    "cumulative_hazard",
    "verify_hazard_expectation",
    "mrl",
    "weighted_mrl",
    "verify_equilibrium_identity",
    "verify_ph_hazard_identity",
    "ResidualBound",
    "monotone_direction",
    "residual_bound",
    "ResidualOrderingReport",
    "residual_ordering_check",
    "residual_gwrigf",
    "residual_gwrigf_transformed",
    "verify_residual_transform",
    "residual_weighted_kl",
]

MIN_SURVIVAL = 1e-12


@dataclass(frozen=True)
class ResidualQuery:
    dist: Distribution
    weight: Weight = X
    beta: float = 1.0
    t: float = 0.0

    def value(self) -> float:
        return residual_gwigf(self.dist, self.weight, self.beta, self.t)


def check_age(d: Distribution, t: float) -> tuple[float, float]:
    """Clamp ``t`` into the support and return ``(t, log S(t))``."""
    t = float(t)
    if math.isnan(t):
        raise DomainError("age t must be a number")
    lo, hi = d.support
    t = max(t, lo)
    if t >= hi:
        raise DomainError(f"age t={t} is at or beyond the upper end of the support")
    ls = float(d.log_survival(t))
    if not ls > math.log(MIN_SURVIVAL):
        raise DomainError(f"survival at t={t} is below {MIN_SURVIVAL:g}; residual law undefined")
    return t, ls


def _pair_ages(f: Distribution, g: Distribution, t: float):
    tf, lsf = check_age(f, t)
    try:
        tg, lsg = check_age(g, t)
    except DomainError:
        raise SupportMismatchError(
            f"reference law {g.spec} has no mass beyond t={t} where {f.spec} does") from None
    return max(tf, tg), lsf, lsg


def _pts(d: Distribution, t: float) -> list[float]:
    return [p for p in anchor_points(d) if t < p < d.support[1]]


def _tail_pow(d: Distribution, w: Weight, beta: float, t: float, ls: float):
    def fn(x):
        lp = np.atleast_1d(d.logpdf(x))
        dead = np.isneginf(lp)
        with np.errstate(under="ignore", over="ignore", invalid="ignore"):
            v = np.exp(beta * (np.where(dead, 0.0, lp) - ls))
        return np.where(dead, 0.0, w(x) * v)
    return fn


def residual_gwigf(d: Distribution, w: Weight, beta: float, t: float, *,
                   public: bool = True) -> float:
    """int_t w (f/S(t))^beta."""
    beta = check_beta(beta, public)
    t, ls = check_age(d, t)
    return quad(_tail_pow(d, w, beta, t, ls), t, d.support[1], points=_pts(d, t)).value


def residual_derivative_t(d: Distribution, w: Weight, beta: float, t: float) -> float:
    """d/dt of the residual GWIGF: -w(t) h(t)^beta + beta h(t) I(t)."""
    val = residual_gwigf(d, w, beta, t)
    t, _ = check_age(d, t)
    h = float(d.hazard(t))
    if not math.isfinite(h):
        raise DomainError(f"hazard is not finite at t={t}")
    return -float(w(t)) * h ** beta + beta * h * val


def cumulative_hazard(d: Distribution, x: float) -> float:
    """-log S(x)."""
    x, ls = check_age(d, x)
    return -ls


def _cumhaz(d: Distribution, x):
    with np.errstate(divide="ignore"):
        return -np.atleast_1d(d.log_survival(x))


def verify_hazard_expectation(d: Distribution, w: Weight, beta: float,
                              tol: float = 1e-6) -> IdentityReport:
    """E[w(X) f^(beta-1)(X) H(X)] against (1/beta) E[I(X; Z)] with Z the PH law
    of order beta; the right side is a nested quadrature."""
    beta = check_beta(beta)
    lo, hi = d.support
    pts = anchor_points(d)
    pw = _tail_pow(d, w, beta, lo, 0.0)

    def left(x):
        return pw(x) * _cumhaz(d, x)

    lhs = quad(left, lo, hi, points=pts).value
    z = ph(d, beta)
    cut = _age_limit(d)

    def right(ts):
        out = np.zeros(np.shape(ts))
        for i, ti in enumerate(np.atleast_1d(ts)):
            if ti >= cut:
                continue
            out[i] = float(z.density(ti)) * residual_gwigf(d, w, beta, ti, public=False)
        return out

    rhs = quad(right, lo, min(hi, cut), points=[p for p in pts if p < cut]).value / beta
    return IdentityReport("hazard-expectation", lhs, rhs, tol)


def _age_limit(d: Distribution) -> float:
    """Largest age at which residual quantities are defined."""
    hi = d.support[1]
    q = float(d.quantile(1.0 - MIN_SURVIVAL * 1.0001))
    return min(hi, q)


def mrl(d: Distribution, t: float) -> float:
    """Mean residual life int_t S / S(t)."""
    t, ls = check_age(d, t)

    def fn(x):
        with np.errstate(under="ignore"):
            return np.exp(np.atleast_1d(d.log_survival(x)) - ls)

    return quad(fn, t, d.support[1], points=_pts(d, t)).value


def weighted_mrl(d: Distribution, w: Weight, t: float, beta: float) -> float:
    """int_t w S^beta / S(t)^beta: the weighted mean residual life of the PH law."""
    beta = check_beta(beta, public=False)
    t, ls = check_age(d, t)

    def fn(x):
        with np.errstate(under="ignore"):
            return w(x) * np.exp(beta * (np.atleast_1d(d.log_survival(x)) - ls))

    return quad(fn, t, d.support[1], points=_pts(d, t)).value


def verify_equilibrium_identity(d: Distribution, w: Weight, beta: float, t: float,
                                tol: float = 1e-6) -> IdentityReport:
    """Residual GWIGF of the equilibrium law against weighted MRL / MRL^beta."""
    e = equilibrium(d)
    lhs = residual_gwigf(e, w, beta, t)
    rhs = weighted_mrl(d, w, t, beta) / mrl(d, t) ** beta
    return IdentityReport("equilibrium", lhs, rhs, tol)


def verify_ph_hazard_identity(d: Distribution, w: Weight, beta: float, t: float,
                              tol: float = 1e-6) -> IdentityReport:
    """beta^beta I(X; t) against E[w(Z) h_Z^(beta-1)(Z) | Z > t], Z the PH law."""
    beta = check_beta(beta)
    lhs = beta ** beta * residual_gwigf(d, w, beta, t)
    z = ph(d, beta)
    t, lz = check_age(z, t)

    def fn(x):
        x = np.atleast_1d(x)
        lp = np.atleast_1d(z.logpdf(x))
        ls = np.atleast_1d(z.log_survival(x))
        dead = np.isneginf(lp)
        lp = np.where(dead, 0.0, lp)
        with np.errstate(under="ignore", over="ignore", invalid="ignore"):
            # h^(beta-1) f / S(t) in logs
            v = np.exp((beta - 1.0) * (lp - ls) + lp - lz)
        return np.where(dead, 0.0, w(x) * v)

    rhs = quad(fn, t, z.support[1], points=_pts(z, t)).value
    return IdentityReport("ph-hazard", lhs, rhs, tol)


# -- monotonicity bound -------------------------------------------------------

@dataclass(frozen=True)
class ResidualBound:
    value: float
    bound: float
    direction: str
    satisfied: bool | None
    slack: float = 1e-9

    def as_dict(self) -> dict:
        return {"value": self.value, "bound": self.bound, "direction": self.direction,
                "satisfied": self.satisfied}


def monotone_direction(values, tie: float = 1e-10) -> str:
    """``increasing``, ``decreasing``, ``constant`` or ``non-monotone``."""
    v = np.asarray(values, dtype=float)
    dv = np.diff(v)
    scale = tie * np.maximum(1.0, np.maximum(np.abs(v[:-1]), np.abs(v[1:])))
    up = bool(np.all(dv >= -scale))
    down = bool(np.all(dv <= scale))
    if up and down:
        return "constant"
    if up:
        return "increasing"
    if down:
        return "decreasing"
    return "non-monotone"


def _age_grid(d: Distribution, m: int = 21) -> np.ndarray:
    return np.atleast_1d(d.quantile(np.linspace(0.01, 0.99, m)))


def residual_bound(d: Distribution, w: Weight, beta: float, t: float,
                   slack: float = 1e-9) -> ResidualBound:
    """Residual GWIGF at t against (1/beta) w(t) h(t)^(beta-1).

    The direction of monotonicity in t is read off a 21-point age grid over
    the central 98% of the law.  An increasing residual function lies above
    the bound, a decreasing one below; for a non-monotone one nothing is
    claimed and ``satisfied`` is None.
    """
    beta = check_beta(beta)
    grid = _age_grid(d)
    direction = monotone_direction([residual_gwigf(d, w, beta, s) for s in grid])
    value = residual_gwigf(d, w, beta, t)
    t, _ = check_age(d, t)
    bound = float(w(t)) * float(d.hazard(t)) ** (beta - 1.0) / beta
    s = slack * max(1.0, abs(bound))
    if direction == "increasing":
        ok = value >= bound - s
    elif direction == "decreasing":
        ok = value <= bound + s
    elif direction == "constant":
        ok = abs(value - bound) <= s
    else:
        ok = None
    return ResidualBound(value, bound, direction, ok, slack)


# -- ordering -----------------------------------------------------------------

@dataclass(frozen=True)
class ResidualOrderingReport:
    premises_hold: bool
    premise_notes: tuple[str, ...]
    betas: tuple[float, ...]
    ages: tuple[float, ...]
    lhs: tuple[tuple[float, ...], ...]
    rhs: tuple[tuple[float, ...], ...]
    holds: bool
    first_violation: tuple[float, float] | None = field(default=None)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _is_decreasing_weight(w: Weight, grid: np.ndarray) -> bool:
    v = np.atleast_1d(w(grid))
    return bool(np.all(np.diff(v) <= 1e-12 * np.maximum(1.0, np.abs(v[:-1]))))


def residual_ordering_check(dX: Distribution, dY: Distribution, w: Weight, betas, ages,
                            slack: float = 1e-9) -> ResidualOrderingReport:
    """Compare residual GWIGFs of X and Y on a (beta, t) grid.

    Premises, checked numerically: Y is smaller than X in the hazard-rate
    order (h_Y >= h_X), one of the two has a decreasing failure rate, and
    the weight is decreasing.  Under them I(X; t) <= I(Y; t).
    """
    betas = tuple(check_beta(b) for b in betas)
    ages = tuple(float(t) for t in ages)
    u = np.linspace(0.01, 0.99, 41)
    grid = np.unique(np.concatenate([np.atleast_1d(dX.quantile(u)),
                                     np.atleast_1d(dY.quantile(u))]))
    grid = grid[(grid > max(dX.support[0], dY.support[0]))
                & (grid < min(dX.support[1], dY.support[1]))]
    notes = []
    hx, hy = np.atleast_1d(dX.hazard(grid)), np.atleast_1d(dY.hazard(grid))
    hr = bool(np.all(hy >= hx - 1e-10 * np.maximum(1.0, hx)))
    if not hr:
        notes.append("hazard-rate order h_Y >= h_X fails on the grid")
    dfr = any(monotone_direction(h) in ("decreasing", "constant") for h in (hx, hy))
    if not dfr:
        notes.append("neither law has a decreasing failure rate on the grid")
    wdec = _is_decreasing_weight(w, grid)
    if not wdec:
        notes.append("weight is not decreasing")
    lhs = tuple(tuple(residual_gwigf(dX, w, b, t) for t in ages) for b in betas)
    rhs = tuple(tuple(residual_gwigf(dY, w, b, t) for t in ages) for b in betas)
    first = None
    for i, b in enumerate(betas):
        for j, t in enumerate(ages):
            if lhs[i][j] > rhs[i][j] + slack * max(1.0, abs(rhs[i][j])) and first is None:
                first = (b, t)
    return ResidualOrderingReport(hr and dfr and wdec, tuple(notes), betas, ages, lhs, rhs,
                                  first is None, first)


# -- relative versions --------------------------------------------------------

def residual_gwrigf(f: Distribution, g: Distribution, w: Weight, beta: float, t: float, *,
                    public: bool = True) -> float:
    """int_t w (f/F(t))^beta (g/G(t))^(1-beta), F and G the survival functions."""
    beta = check_beta(beta, public)
    t, lsf, lsg = _pair_ages(f, g, t)
    if beta > 1:
        check_support(f, g)
    lo, hi, pts = _common(f, g)
    lo = max(lo, t)
    if not lo < hi:
        raise DomainError(f"age t={t} leaves no common support")
    inner = _rigf_integrand(f, g, ONE, beta)
    # fold the survival normalisers in as a constant factor
    c = math.exp(-beta * lsf - (1.0 - beta) * lsg)

    def fn(x):
        return w(x) * inner(x) * c

    return quad(fn, lo, hi, points=[p for p in pts if p > lo]).value


def residual_gwrigf_transformed(f: Distribution, g: Distribution, w: Weight,
                                psi: MonotoneMap, beta: float, t: float) -> float:
    """Residual GWRIGF of (psi(X), psi(Y)) at age t, computed from X and Y as
    the residual GWRIGF with weight w(psi(.)) at age psi^{-1}(t).

    Only increasing maps are accepted: for a decreasing one the event
    psi(X) > t is a past-lifetime event of X.
    """
    if not psi.increasing:
        raise DomainError("residual transformation needs an increasing map")
    beta = check_beta(beta)
    s = float(psi.inverse(t))
    s, lsf, lsg = _pair_ages(f, g, s)
    if beta > 1:
        check_support(f, g)
    lo, hi, pts = _common(f, g)
    lo = max(lo, s)
    inner = _rigf_integrand(f, g, ONE, beta)
    c = math.exp(-beta * lsf - (1.0 - beta) * lsg)

    def fn(x):
        return w(np.atleast_1d(psi(x))) * inner(x) * c

    return quad(fn, lo, hi, points=[p for p in pts if p > lo]).value


def verify_residual_transform(f: Distribution, g: Distribution, w: Weight, psi: MonotoneMap,
                              beta: float, t: float, tol: float = 1e-7) -> IdentityReport:
    """Residual GWRIGF of the transformed laws against the pulled-back form."""
    lhs = residual_gwrigf(Transformed(f, psi), Transformed(g, psi), w, beta, t)
    rhs = residual_gwrigf_transformed(f, g, w, psi, beta, t)
    return IdentityReport("residual-transform", lhs, rhs, tol)


def residual_weighted_kl(f: Distribution, g: Distribution, w: Weight, t: float) -> float:
    """int_t w (f/F(t)) log[(f/F(t)) / (g/G(t))]."""
    t, lsf, lsg = _pair_ages(f, g, t)
    check_support(f, g)
    lo, hi, pts = _common(f, g)
    lo = max(lo, t)

    def fn(x):
        lf = np.atleast_1d(f.logpdf(x))
        lg = np.atleast_1d(g.logpdf(x))
        dead = np.isneginf(lf)
        lf = np.where(dead, 0.0, lf) - lsf
        lg = np.where(dead, 0.0, lg) - lsg
        with np.errstate(under="ignore", invalid="ignore"):
            v = np.exp(lf) * (lf - lg)
        return np.where(dead, 0.0, w(x) * v)

    return quad(fn, lo, hi, points=[p for p in pts if p > lo]).value
