"""Constructions derived from one or two densities (escort, generalized escort,
(r, gamma)-mixture, equilibrium, proportional hazards) and the identities
linking their generating functions back to those of the parents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dist import Distribution, Exponential, Numeric, ProportionalHazards, Uniform
from .errors import DivergenceError, DomainError, InfiniteMeanError
from .igf import gwigf
from .report import IdentityReport
from .rigf import _common, check_support, cross_informational_energy, gwrigf
from .weights import ONE, Weight

__all__ = [
    "EscortSpec",
    "escort",
    "generalized_escort",
    "mixture_r_gamma",
    "mixture_weight",
    "escort_mixture",
    "equilibrium",
    "ph",
    "verify_escort_igf",
    "verify_gen_escort_igf",
    "verify_mixture_igf",
    "verify_mixture_rigf",
    "verify_cross_energy_escort",
    "CrossEnergyReport",
]


@dataclass(frozen=True)
class EscortSpec:
    """Parameters of an escort-type construction."""

    alpha: float = 1.0
    r: float = 0.5
    gamma: float = 1.0

    def __post_init__(self):
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise DomainError("order alpha must be positive")
        if not 0 < self.r < 1:
            raise DomainError("mixing weight r must lie in (0, 1)")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise DomainError("gamma must be positive")


def _order(a: float, name: str) -> float:
    a = float(a)
    if not (a > 0 and math.isfinite(a)):
        raise DomainError(f"{name} must be a positive number, got {a}")
    return a


def _numeric(logfn, lo, hi, label, points) -> Numeric:
    # built from the log density so the tail stays representable where the
    # density itself underflows
    def fn(x):
        with np.errstate(under="ignore", over="ignore"):
            return np.exp(logfn(x))
    return Numeric(fn, lo, hi, label=label, points=points, logfn=logfn)


def escort(d: Distribution, alpha: float) -> Distribution:
    """Escort law of order alpha, density f^alpha / int f^alpha."""
    alpha = _order(alpha, "alpha")
    if alpha == 1.0:
        return d
    if isinstance(d, Exponential):
        return Exponential(alpha * d.lam)
    if isinstance(d, Uniform):
        return d
    lo, hi = d.support

    def logfn(x):
        return alpha * np.atleast_1d(d.logpdf(x))

    return _numeric(logfn, lo, hi, f"escort({d.spec},{alpha!r})", d.breakpoints)


def generalized_escort(f: Distribution, g: Distribution, alpha: float) -> Distribution:
    """Density proportional to f^alpha g^(1-alpha)."""
    alpha = _order(alpha, "alpha")
    if alpha == 1.0 or f == g:
        return f
    if isinstance(f, Exponential) and isinstance(g, Exponential):
        rate = alpha * f.lam + (1.0 - alpha) * g.lam
        if not rate > 0:
            raise DivergenceError("generalized escort normaliser diverges")
        return Exponential(rate)
    if alpha > 1:
        check_support(f, g)
    lo, hi, pts = _common(f, g)

    def logfn(x):
        lf = np.atleast_1d(f.logpdf(x))
        lg = np.atleast_1d(g.logpdf(x))
        dead = np.isneginf(lf) | (np.isneginf(lg) if alpha < 1 else False)
        v = alpha * np.where(dead, 0.0, lf) + (1.0 - alpha) * np.where(dead, 0.0, lg)
        return np.where(dead, -np.inf, v)

    return _numeric(logfn, lo, hi, f"gen-escort({f.spec},{g.spec},{alpha!r})", pts)


def _union(f: Distribution, g: Distribution):
    lo = min(f.support[0], g.support[0])
    hi = max(f.support[1], g.support[1])
    pts = sorted({p for p in (*f.breakpoints, *g.breakpoints,
                               f.support[0], f.support[1], g.support[0], g.support[1])
                  if lo < p < hi})
    return lo, hi, pts


def mixture_r_gamma(f1: Distribution, f2: Distribution, r: float, gamma: float) -> Distribution:
    """(r, gamma)-mixture: [r f1^gamma + (1-r) f2^gamma]^(1/gamma), normalised."""
    spec = EscortSpec(r=r, gamma=gamma)
    r, gamma = spec.r, spec.gamma
    lo, hi, pts = _union(f1, f2)
    lr, l1r = math.log(r), math.log1p(-r)

    def logfn(x):
        a = lr + gamma * np.atleast_1d(f1.logpdf(x))
        b = l1r + gamma * np.atleast_1d(f2.logpdf(x))
        return np.logaddexp(a, b) / gamma

    return _numeric(logfn, lo, hi, f"mix({f1.spec},{f2.spec},r={r!r},gamma={gamma!r})", pts)


def mixture_weight(f1: Distribution, f2: Distribution, r: float, gamma: float) -> float:
    """Mixing weight Gamma = r I_g(X1) / (r I_g(X1) + (1-r) I_g(X2)), g = gamma."""
    i1 = gwigf(f1, ONE, gamma, public=False)
    i2 = gwigf(f2, ONE, gamma, public=False)
    return r * i1 / (r * i1 + (1.0 - r) * i2)


def escort_mixture(f1: Distribution, f2: Distribution, r: float, gamma: float) -> Distribution:
    """X_Gamma: ordinary mixture of the order-gamma escorts with weight Gamma."""
    big = mixture_weight(f1, f2, r, gamma)
    e1, e2 = escort(f1, gamma), escort(f2, gamma)
    lo, hi, pts = _union(f1, f2)
    with np.errstate(divide="ignore"):
        lb, l1b = np.log(big), np.log1p(-big)

    def logfn(x):
        return np.logaddexp(lb + np.atleast_1d(e1.logpdf(x)), l1b + np.atleast_1d(e2.logpdf(x)))

    return _numeric(logfn, lo, hi, f"escort-mix({f1.spec},{f2.spec},Gamma={big!r})", pts)


def equilibrium(d: Distribution) -> Distribution:
    """Equilibrium law with density S(x)/mu."""
    if isinstance(d, Exponential):
        return d
    try:
        mu = d.mean()
    except InfiniteMeanError:
        raise
    except ArithmeticError as exc:
        raise InfiniteMeanError(f"{d.spec} has no finite mean") from exc
    if not math.isfinite(mu):
        raise InfiniteMeanError(f"{d.spec} has no finite mean")
    lo, hi = d.support
    if lo < 0:
        raise DomainError("equilibrium law needs a non-negative lifetime")

    def logfn(x):
        return np.atleast_1d(d.log_survival(x))

    return _numeric(logfn, lo, hi, f"equilibrium({d.spec})", d.breakpoints)


def ph(d: Distribution, beta: float) -> Distribution:
    """Proportional-hazards law with survival S^beta."""
    beta = _order(beta, "beta")
    if beta == 1.0:
        return d
    if isinstance(d, Exponential):
        return Exponential(beta * d.lam)
    return ProportionalHazards(d, beta)


# -- identities ---------------------------------------------------------------

def verify_escort_igf(d: Distribution, w: Weight, alpha: float, beta: float,
                      tol: float = 1e-7) -> IdentityReport:
    lhs = gwigf(escort(d, alpha), w, beta, public=False)
    rhs = gwigf(d, w, alpha * beta, public=False) / gwigf(d, ONE, alpha, public=False) ** beta
    return IdentityReport("escort-igf", lhs, rhs, tol)


def verify_gen_escort_igf(f: Distribution, g: Distribution, w: Weight, alpha: float,
                          beta: float, tol: float = 1e-7) -> IdentityReport:
    lhs = gwigf(generalized_escort(f, g, alpha), w, beta, public=False)
    ibf = gwigf(f, ONE, beta, public=False)
    ibg = gwigf(g, ONE, beta, public=False)
    ra = gwrigf(f, g, ONE, alpha, public=False)
    rw = gwrigf(escort(f, beta), escort(g, beta), w, alpha, public=False)
    rhs = ibf ** alpha * ibg ** (1.0 - alpha) / ra ** beta * rw
    return IdentityReport("gen-escort", lhs, rhs, tol)


def verify_mixture_igf(f1: Distribution, f2: Distribution, r: float, gamma: float, w: Weight,
                       beta: float, tol: float = 1e-7) -> IdentityReport:
    lhs = gwigf(mixture_r_gamma(f1, f2, r, gamma), w, beta, public=False)
    xg = escort_mixture(f1, f2, r, gamma)
    rhs = (gwigf(xg, w, beta / gamma, public=False)
           / gwigf(xg, ONE, 1.0 / gamma, public=False) ** beta)
    return IdentityReport("mixture-igf", lhs, rhs, tol)


def verify_mixture_rigf(f1: Distribution, f2: Distribution, r: float, gamma: float, w: Weight,
                        beta: float, i: int = 1, tol: float = 1e-7) -> IdentityReport:
    if i not in (1, 2):
        raise DomainError("component index must be 1 or 2")
    fi = f1 if i == 1 else f2
    lhs = gwrigf(mixture_r_gamma(f1, f2, r, gamma), fi, w, beta, public=False)
    k = escort(escort_mixture(f1, f2, r, gamma), 1.0 / gamma)
    rhs = gwrigf(k, fi, w, beta, public=False)
    return IdentityReport("mixture-rigf", lhs, rhs, tol)


@dataclass(frozen=True)
class CrossEnergyReport:
    identity: IdentityReport
    bound: float
    bound_satisfied: bool

    @property
    def passed(self) -> bool:
        return self.identity.passed and self.bound_satisfied

    def as_dict(self) -> dict:
        return {**self.identity.as_dict(), "bound": self.bound,
                "bound_satisfied": self.bound_satisfied}


def verify_cross_energy_escort(f: Distribution, g: Distribution, w: Weight, alpha: float,
                               beta: float, tol: float = 1e-7,
                               slack: float = 1e-9) -> CrossEnergyReport:
    lhs = cross_informational_energy(escort(f, alpha), escort(g, alpha), w, beta, public=False)
    scale = math.sqrt((gwigf(f, ONE, alpha, public=False) * gwigf(g, ONE, alpha, public=False))
                      ** beta)
    rhs = cross_informational_energy(f, g, w, alpha * beta, public=False) / scale
    bound = (gwigf(f, w, alpha * beta, public=False)
             + gwigf(g, w, alpha * beta, public=False)) / (2.0 * scale)
    ok = lhs <= bound + slack * max(1.0, abs(bound))
    return CrossEnergyReport(IdentityReport("cross-energy", lhs, rhs, tol), bound, bool(ok))
