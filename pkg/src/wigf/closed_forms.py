"""Catalogue of closed-form expressions, each validated against quadrature.

Every entry stores two formulas: ``published`` (the expression as it
appears in the source literature) and ``correct`` (the expression obtained by
direct integration).  Where they differ the entry is marked ``flagged``; the
flag is static metadata, and :func:`audit` re-derives it numerically so the
marker cannot silently go stale.  Lookups always return the correct value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

from .dist import (Distribution, Exponential, InvertedExponential, Pareto1, Transformed,
                   TriangularDown, TriangularUp, Uniform, Weibull, lomax)
from .errors import DomainError, UnsupportedModelError
from .maps import MonotoneMap
from .weights import Weight, power
from .weights import X as WX

__all__ = ["Entry", "ClosedValue", "CATALOGUE", "gwigf_closed", "gwrigf_closed",
           "residual_gwigf_closed", "residual_gwrigf_closed", "audit", "AuditRow", "entry"]

G = math.gamma


@dataclass(frozen=True)
class Entry:
    name: str
    kind: str  # gwigf | gwrigf | residual | residual_rigf | hazard_moment | entropy_lower
    correct: Callable[..., float]
    published: Callable[..., float]
    flagged: bool
    valid: Callable[..., bool]
    draws: tuple[dict, ...]
    note: str = ""
    # the quantity the audit integrates numerically, built from the params
    build: Callable[..., tuple] = field(default=None, repr=False)


@dataclass(frozen=True)
class ClosedValue:
    value: float
    published: float
    flagged: bool
    entry: str

    def as_dict(self):
        return {"value": self.value, "published": self.published, "flagged": self.flagged,
                "entry": self.entry}


def _always(**_):
    return True


# -- gwigf entries -----------------------------------------------------------------

def _unif_x(a, b, beta):
    return 0.5 * (a + b) * (b - a) ** (1.0 - beta)


def _unif_invx(a, b, beta):
    return (b - a) ** (-beta) * math.log(b / a)


def _unif_invx_pub(a, b, beta):
    return (b - a) ** beta * math.log(b / a)


def _ie_x(lam, beta):
    return lam ** (beta - 2) * G(2 * beta - 2) / beta ** (2 * beta - 2)


def _ie_x_pub(lam, beta):
    return lam ** (beta + 2) * G(2 * beta + 2) / beta ** (2 * beta + 2)


def _ie_invx(lam, beta):
    return lam ** beta * G(2 * beta) / beta ** (2 * beta)


def _exp_one(lam, beta):
    return lam ** (beta - 1) / beta


def _exp_x(lam, beta):
    return lam ** (beta - 2) / beta ** 2


def _exp_shift(lam, b, beta):
    return lam ** beta * (lam * beta * b + 1.0) / (lam * beta) ** 2


def _exp_pow(lam, m, beta):
    return G(m + 1) * lam ** (beta - m - 1) / beta ** (m + 1)


def _tri_up_x(beta):
    return 2.0 ** beta / (beta + 2.0)


def _tri_down_x(beta):
    return 2.0 ** beta * special.beta(2.0, beta + 1.0)


def _tri_one(beta):
    return 2.0 ** beta / (beta + 1.0)


def _lomax_x(c, beta):
    p = (c + 1.0) * beta
    return c ** beta / ((p - 1.0) * (p - 2.0))


def _weib_x(delta, theta, beta):
    s = (beta * delta - beta + 2.0) / delta
    return delta ** (beta - 1) * theta ** (2 - beta) * G(s) / beta ** s


def _weib_x_pub(delta, theta, beta):
    s = (beta * delta - beta + 2.0) / delta
    return delta ** (beta - 1) * theta ** (2 - beta) * G((beta * delta - beta + 1.0) / delta) / beta ** s


def _weib_hz(delta, theta, beta):
    return delta ** beta * theta ** (1 - beta) * G(beta + 1.0 + (1.0 - beta) / delta)


def _weib_hz_pub(delta, theta, beta):
    return delta ** beta * theta ** (1 - beta) * G((beta + 1.0) / delta + 1.0)


def _weib_low(delta, theta, beta):
    g1 = G(1.0 + 1.0 / delta)
    return (theta * g1 * (1.0 + beta * math.log(delta / theta))
            + theta * beta * (delta - 1.0) * g1 * special.digamma(1.0 + 1.0 / delta) / delta
            - theta * beta * G(2.0 + 1.0 / delta))


def _weib_low_pub(delta, theta, beta):
    return (theta * G(2.0) * (1.0 - beta * math.log(delta / theta))
            + theta * beta * G(2.0 + 1.0 / delta)
            - theta * beta * (delta - 1.0) * special.digamma(1.0 / delta + 1.0))


# -- gwrigf entries ----------------------------------------------------------------

def _exp_pair_pow(l1, l2, m, beta):
    return G(m + 1) * l1 ** beta * l2 ** (1 - beta) / (l1 * beta + l2 * (1 - beta)) ** (m + 1)


def _par_pair_pow(a1, a2, m, beta):
    d = (a1 + 1) * beta + (a2 + 1) * (1 - beta) - 1 - m
    return a1 ** beta * a2 ** (1 - beta) / d


def _sqrt_exp_pair(l1, l2, beta):
    return 0.5 * math.sqrt(math.pi) * l1 ** beta * l2 ** (1 - beta) / (beta * l1 + (1 - beta) * l2) ** 1.5


def _inv_exp_pair(l1, l2, beta):
    return l1 ** beta * l2 ** (1 - beta) / (beta * l1 + (1 - beta) * l2) ** 2


# -- residual entries --------------------------------------------------------------

def _res_exp(lam, beta, t):
    return lam ** beta * (beta * lam * t + 1.0) / (beta * lam) ** 2


def _res_exp_est_pub(lam, beta, t):
    return beta ** 2 * lam ** (beta - 2) * (beta * lam * t + 1.0)


def _res_par(a, gamma, beta, t):
    return a ** beta * t ** (2.0 - beta) / (beta * (a + 1.0) - 2.0)


def _res_par_pub(a, gamma, beta, t):
    return (a * gamma ** a / (1.0 - (gamma / t) ** a)) ** beta * t ** (1.0 - a) / (a - 1.0)


def _res_par_pair(c, g, beta, t):
    return c ** beta * g ** (1 - beta) * t / (beta * c - beta * g + g - 1.0)


def _res_par_pair_pub(c, g, beta, t):
    return c ** beta * g ** (1 - beta) * t / (1.0 - g + beta * c - beta * g)


CATALOGUE: tuple[Entry, ...] = (
    Entry("uniform/x", "gwigf", _unif_x, _unif_x, False, _always,
          ({"a": 0.0, "b": 10.0}, {"a": 1.0, "b": 3.0}, {"a": 0.5, "b": 0.9}),
          build=lambda a, b: (Uniform(a, b), WX)),
    Entry("uniform/invx", "gwigf", _unif_invx, _unif_invx_pub, True, lambda a, b, **_: a > 0,
          ({"a": 1.0, "b": 3.0}, {"a": 0.5, "b": 4.0}, {"a": 2.0, "b": 2.5}),
          note="published exponent of (b - a) has the wrong sign",
          build=lambda a, b: (Uniform(a, b), Weight("invx"))),
    Entry("invexp/x", "gwigf", _ie_x, _ie_x_pub, True, lambda beta, **_: beta > 1,
          ({"lam": 1.0}, {"lam": 0.5}, {"lam": 2.0}),
          note="published powers and gamma argument are shifted; valid for beta > 1 only",
          build=lambda lam: (InvertedExponential(lam), WX)),
    Entry("invexp/invx", "gwigf", _ie_invx, _ie_invx, False, _always,
          ({"lam": 1.0}, {"lam": 0.5}, {"lam": 2.0}),
          build=lambda lam: (InvertedExponential(lam), Weight("invx"))),
    Entry("exp/one", "gwigf", _exp_one, _exp_one, False, _always,
          ({"lam": 1.0}, {"lam": 0.5}, {"lam": 3.0}),
          build=lambda lam: (Exponential(lam), Weight("one"))),
    Entry("exp/x", "gwigf", _exp_x, _exp_x, False, _always,
          ({"lam": 2.0}, {"lam": 0.5}, {"lam": 1.3}),
          build=lambda lam: (Exponential(lam), WX)),
    Entry("exp/shift", "gwigf", _exp_shift, _exp_shift, False, _always,
          ({"lam": 1.0, "b": 1.0}, {"lam": 2.0, "b": 1.0}, {"lam": 0.7, "b": 2.5}),
          build=lambda lam, b: (Exponential(lam), Weight("shift", param=b))),
    Entry("exp/pow", "gwigf", _exp_pow, _exp_pow, False, _always,
          ({"lam": 1.0, "m": 2.0}, {"lam": 0.5, "m": 0.5}, {"lam": 2.0, "m": 3.0}),
          build=lambda lam, m: (Exponential(lam), power(m))),
    Entry("tri-up/x", "gwigf", lambda beta: _tri_up_x(beta), lambda beta: _tri_up_x(beta), False,
          _always, ({},), build=lambda: (TriangularUp(), WX)),
    Entry("tri-down/x", "gwigf", lambda beta: _tri_down_x(beta), lambda beta: _tri_down_x(beta),
          False, _always, ({},), build=lambda: (TriangularDown(), WX)),
    Entry("tri-up/one", "gwigf", _tri_one, _tri_one, False, _always, ({},),
          build=lambda: (TriangularUp(), Weight("one"))),
    Entry("tri-down/one", "gwigf", _tri_one, _tri_one, False, _always, ({},),
          build=lambda: (TriangularDown(), Weight("one"))),
    Entry("lomax/x", "gwigf", _lomax_x, _lomax_x, False,
          lambda c, beta, **_: (c + 1.0) * beta > 2.0,
          ({"c": 2.0}, {"c": 3.0}, {"c": 1.5}),
          build=lambda c: (lomax(c), WX)),
    Entry("weibull/x", "gwigf", _weib_x, _weib_x_pub, True, _always,
          ({"delta": 2.0, "theta": 1.0}, {"delta": 1.5, "theta": 2.0}, {"delta": 3.0, "theta": 0.5}),
          note="published gamma argument is (beta delta - beta + 1)/delta; direct integration "
               "gives (beta delta - beta + 2)/delta",
          build=lambda delta, theta: (Weibull(delta, theta), WX)),
    Entry("weibull/x/hazard-moment", "hazard_moment", _weib_hz, _weib_hz_pub, True, _always,
          ({"delta": 1.5, "theta": 1.0}, {"delta": 3.0, "theta": 2.0}, {"delta": 2.5, "theta": 0.5}),
          note="E[X h^beta(X)]; published form agrees only at delta = 2",
          build=lambda delta, theta: (Weibull(delta, theta), WX)),
    Entry("weibull/x/entropy-lower", "entropy_lower", _weib_low, _weib_low_pub, True, _always,
          ({"delta": 1.5, "theta": 1.0}, {"delta": 2.0, "theta": 2.0}, {"delta": 3.0, "theta": 0.5}),
          note="E[X] - beta H^x(X); published signs and leading gamma factor disagree",
          build=lambda delta, theta: (Weibull(delta, theta), WX)),
    # relative entries
    Entry("exp-pair/pow", "gwrigf", _exp_pair_pow, _exp_pair_pow, False,
          lambda l1, l2, beta, **_: beta * l1 + (1 - beta) * l2 > 0,
          ({"l1": 2.0, "l2": 1.0, "m": 1.0}, {"l1": 1.5, "l2": 1.0, "m": 2.0},
           {"l1": 3.0, "l2": 2.0, "m": 0.5}),
          build=lambda l1, l2, m: (Exponential(l1), Exponential(l2), power(m))),
    Entry("pareto-pair/pow", "gwrigf", _par_pair_pow, _par_pair_pow, False,
          lambda a1, a2, m, beta: m - (a1 + 1) * beta - (a2 + 1) * (1 - beta) + 1 < 0,
          ({"a1": 3.0, "a2": 2.0, "m": 1.0}, {"a1": 4.0, "a2": 3.0, "m": 2.0},
           {"a1": 5.0, "a2": 4.5, "m": 0.5}),
          build=lambda a1, a2, m: (Pareto1(a1, 1.0), Pareto1(a2, 1.0), power(m))),
    Entry("sqrt-exp-pair/x", "gwrigf", _sqrt_exp_pair, _sqrt_exp_pair, False,
          lambda l1, l2, beta, **_: beta * l1 + (1 - beta) * l2 > 0,
          ({"l1": 2.0, "l2": 1.0}, {"l1": 1.5, "l2": 1.0}, {"l1": 3.0, "l2": 2.5}),
          build=lambda l1, l2: (Transformed(Exponential(l1), MonotoneMap.sqrt()),
                                Transformed(Exponential(l2), MonotoneMap.sqrt()), WX)),
    Entry("inv-exp-pair/invx", "gwrigf", _inv_exp_pair, _inv_exp_pair, False,
          lambda l1, l2, beta, **_: beta * l1 + (1 - beta) * l2 > 0,
          ({"l1": 2.0, "l2": 1.0}, {"l1": 1.5, "l2": 1.0}, {"l1": 3.0, "l2": 2.5}),
          build=lambda l1, l2: (Transformed(Exponential(l1), MonotoneMap.reciprocal()),
                                Transformed(Exponential(l2), MonotoneMap.reciprocal()),
                                Weight("invx"))),
    # residual entries (weight x)
    Entry("exp/x/residual", "residual", _res_exp, _res_exp, False, _always,
          ({"lam": 1.0, "t": 1.0}, {"lam": 0.5, "t": 0.1}, {"lam": 2.0, "t": 0.7}),
          build=lambda lam, t: (Exponential(lam), WX)),
    Entry("exp/x/residual-estimation-form", "residual", _res_exp, _res_exp_est_pub, True, _always,
          ({"lam": 0.5, "t": 0.5}, {"lam": 1.0, "t": 1.0}, {"lam": 2.0, "t": 0.2}),
          note="estimation section states the prefactor beta^2 instead of 1/beta^2 "
               "(identical at beta = 1 only)",
          build=lambda lam, t: (Exponential(lam), WX)),
    Entry("pareto1/x/residual", "residual", _res_par, _res_par_pub, True,
          lambda a, beta, **_: beta * (a + 1.0) > 2.0 and a > 1.0,
          ({"a": 3.0, "gamma": 2.0, "t": 3.0}, {"a": 2.5, "gamma": 1.0, "t": 2.0},
           {"a": 4.0, "gamma": 0.5, "t": 1.0}),
          note="published form uses 1 - (gamma/t)^a where the survival is (gamma/t)^a",
          build=lambda a, gamma, t: (Pareto1(a, gamma), WX)),
    Entry("pareto-pair/x/residual", "residual_rigf", _res_par_pair, _res_par_pair_pub, True,
          lambda c, g, beta, **_: beta * c - beta * g + g - 1.0 > 0,
          ({"c": 3.0, "g": 2.0, "t": 2.0}, {"c": 4.0, "g": 3.0, "t": 1.5},
           {"c": 2.5, "g": 2.0, "t": 3.0}),
          note="published denominator has the sign of (gamma - 1) reversed",
          build=lambda c, g, t: (Pareto1(c, 1.0), Pareto1(g, 1.0), WX)),
)

_BY_NAME = {e.name: e for e in CATALOGUE}


def entry(name: str) -> Entry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnsupportedModelError(f"no catalogue entry {name!r}") from None


def _value(e: Entry, params: dict, beta: float) -> ClosedValue:
    if not e.valid(beta=beta, **params):
        raise DomainError(f"{e.name}: closed form not valid at beta={beta}, {params}")
    return ClosedValue(float(e.correct(beta=beta, **params)),
                       float(e.published(beta=beta, **params)), e.flagged, e.name)


def _match_gwigf(d: Distribution, w: Weight):
    if isinstance(d, Uniform):
        if w.kind == "x":
            return "uniform/x", {"a": d.a, "b": d.b}
        if w.kind == "invx":
            return "uniform/invx", {"a": d.a, "b": d.b}
    if isinstance(d, InvertedExponential):
        if w.kind == "x":
            return "invexp/x", {"lam": d.lam}
        if w.kind == "invx":
            return "invexp/invx", {"lam": d.lam}
    if isinstance(d, Exponential):
        if w.kind == "one":
            return "exp/one", {"lam": d.lam}
        if w.kind == "x":
            return "exp/x", {"lam": d.lam}
        if w.kind == "shift":
            return "exp/shift", {"lam": d.lam, "b": w.param}
        if w.kind == "pow":
            return "exp/pow", {"lam": d.lam, "m": w.param}
    if isinstance(d, TriangularUp) and w.kind in ("x", "one"):
        return f"tri-up/{w.kind}", {}
    if isinstance(d, TriangularDown) and w.kind in ("x", "one"):
        return f"tri-down/{w.kind}", {}
    if isinstance(d, Transformed) and d.name == "lomax" and w.kind == "x":
        return "lomax/x", {"c": d.base.c}
    if isinstance(d, Weibull) and w.kind == "x":
        return "weibull/x", {"delta": d.delta, "theta": d.theta}
    return None


def gwigf_closed(d: Distribution, w: Weight, beta: float) -> ClosedValue:
    """Closed-form I^w_beta(X) for catalogued (model, weight) pairs."""
    m = _match_gwigf(d, w)
    if m is None:
        raise UnsupportedModelError(f"no closed form for {d.spec} with weight {w.key}")
    return _value(_BY_NAME[m[0]], m[1], float(beta))


def _is_t_exp(d, kind):
    return (isinstance(d, Transformed) and isinstance(d.base, Exponential) and d.name is None
            and d.psi.kind == kind and (kind != "power" or d.psi.p == 0.5))


def gwrigf_closed(f: Distribution, g: Distribution, w: Weight, beta: float) -> ClosedValue:
    """Closed-form R^w_beta(X, Y) for catalogued pairs."""
    beta = float(beta)
    if isinstance(f, Exponential) and isinstance(g, Exponential) and w.kind in ("x", "pow", "one"):
        m = {"x": 1.0, "one": 0.0}.get(w.kind, w.param)
        return _value(_BY_NAME["exp-pair/pow"], {"l1": f.lam, "l2": g.lam, "m": m}, beta)
    if (isinstance(f, Pareto1) and isinstance(g, Pareto1) and f.gamma == 1.0 and g.gamma == 1.0
            and w.kind in ("x", "pow", "one")):
        m = {"x": 1.0, "one": 0.0}.get(w.kind, w.param)
        return _value(_BY_NAME["pareto-pair/pow"], {"a1": f.c, "a2": g.c, "m": m}, beta)
    if _is_t_exp(f, "power") and _is_t_exp(g, "power") and w.kind == "x":
        return _value(_BY_NAME["sqrt-exp-pair/x"], {"l1": f.base.lam, "l2": g.base.lam}, beta)
    if _is_t_exp(f, "reciprocal") and _is_t_exp(g, "reciprocal") and w.kind == "invx":
        return _value(_BY_NAME["inv-exp-pair/invx"], {"l1": f.base.lam, "l2": g.base.lam}, beta)
    raise UnsupportedModelError(f"no closed form for ({f.spec}, {g.spec}) with weight {w.key}")


def residual_gwigf_closed(d: Distribution, beta: float, t: float,
                          w: Weight = WX) -> ClosedValue:
    """Closed-form residual I^x_beta(X; t) (weight x only)."""
    if w.kind != "x":
        raise UnsupportedModelError("residual closed forms exist for weight x only")
    t = float(t)
    if isinstance(d, Exponential):
        return _value(_BY_NAME["exp/x/residual"], {"lam": d.lam, "t": max(t, 0.0)}, float(beta))
    if isinstance(d, Pareto1):
        if t < d.gamma:
            raise DomainError("pareto1 residual closed form needs t >= gamma")
        return _value(_BY_NAME["pareto1/x/residual"], {"a": d.c, "gamma": d.gamma, "t": t},
                      float(beta))
    raise UnsupportedModelError(f"no residual closed form for {d.spec}")


def residual_gwrigf_closed(f: Distribution, g: Distribution, beta: float, t: float,
                           w: Weight = WX) -> ClosedValue:
    """Closed-form residual R^x_beta(X, Y; t) for Pareto-I pairs on x >= 1."""
    if (isinstance(f, Pareto1) and isinstance(g, Pareto1) and f.gamma == 1.0 and g.gamma == 1.0
            and w.kind == "x" and t >= 1.0):
        return _value(_BY_NAME["pareto-pair/x/residual"], {"c": f.c, "g": g.c, "t": float(t)},
                      float(beta))
    raise UnsupportedModelError("no residual relative closed form for this pair")


# ---------------------------------------------------------------------------
# audit against quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AuditRow:
    entry: str
    params: dict
    beta: float
    quad: float
    correct: float
    published: float
    rel_err_correct: float
    rel_err_published: float

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def _oracle(e: Entry, params: dict, beta: float) -> float:
    # local imports: these modules import the catalogue lazily as well
    from .igf import gwigf, hazard_weighted_moment, weighted_entropy
    from .residual import residual_gwigf, residual_gwrigf
    from .rigf import gwrigf

    t = params.get("t")
    built = e.build(**params)
    if e.kind == "gwigf":
        d, w = built
        return gwigf(d, w, beta, public=False)
    if e.kind == "hazard_moment":
        d, w = built
        return hazard_weighted_moment(d, w, beta)
    if e.kind == "entropy_lower":
        d, w = built
        return d.mean() - beta * weighted_entropy(d, w)
    if e.kind == "gwrigf":
        f, g, w = built
        return gwrigf(f, g, w, beta, public=False)
    if e.kind == "residual":
        d, w = built
        return residual_gwigf(d, w, beta, t)
    if e.kind == "residual_rigf":
        f, g, w = built
        return residual_gwrigf(f, g, w, beta, t)
    raise AssertionError(e.kind)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def audit(names=None, betas=(1.0, 1.5, 2.0, 3.0)) -> list[AuditRow]:
    """Evaluate every (entry, parameter draw, beta) against quadrature."""
    rows = []
    for e in CATALOGUE:
        if names is not None and e.name not in names:
            continue
        for params in e.draws:
            for beta in betas:
                if not e.valid(beta=beta, **params):
                    continue
                q = _oracle(e, params, beta)
                c = float(e.correct(beta=beta, **params))
                with np.errstate(all="ignore"):
                    try:
                        pub = float(e.published(beta=beta, **params))
                    except (ZeroDivisionError, OverflowError, ValueError):
                        pub = math.nan
                rows.append(AuditRow(e.name, dict(params), beta, q, c, pub, _rel(c, q),
                                     _rel(pub, q) if math.isfinite(pub) else math.inf))
    return rows


def detected_flags(rows, threshold: float = 0.05) -> dict[str, bool]:
    """Entry name -> True when the published formula misses quadrature by more
    than ``threshold`` (relative) somewhere in the audit."""
    out: dict[str, bool] = {}
    for r in rows:
        out[r.entry] = out.get(r.entry, False) or r.rel_err_published > threshold
    return out
