"""Maximum-likelihood fits, information criteria and model ranking, plus the
bundled data fixtures."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy import optimize, special

from .dist import Distribution, Exponential, Gumbel2, Sample
from .errors import DomainError, InputError, NonConvergenceError, WigfError
from .report import ReportTable

__all__ = [
    "FitResult",
    "CriteriaRow",
    "MODELS",
    "FIXTURES",
    "fit_mle",
    "log_likelihood",
    "information_criteria",
    "gof_report",
    "gumbel2_profile_score",
    "parse_values",
    "load_fixture",
]

MODELS = ("exp", "gumbel2")
_ALIASES = {"exp": "exp", "exponential": "exp", "gumbel2": "gumbel2", "gumbel-ii": "gumbel2"}
FIXTURES = ("bladder", "relief")
MAX_ITER = 200
ALPHA_TOL = 1e-8


def _model_id(name: str) -> str:
    try:
        return _ALIASES[name.strip().lower()]
    except KeyError:
        raise DomainError(f"unknown model {name!r}; choose from {MODELS}") from None


@dataclass(frozen=True)
class FitResult:
    model: str
    params: dict
    loglik: float
    k: int
    n: int
    iterations: int = 0

    def __post_init__(self):
        if not math.isfinite(self.loglik):
            raise NonConvergenceError(f"{self.model} fit has non-finite log-likelihood")
        if self.k < 1:
            raise DomainError("k must be at least 1")

    @property
    def neg_loglik(self) -> float:
        return -self.loglik

    def distribution(self) -> Distribution:
        if self.model == "exp":
            return Exponential(self.params["lambda"])
        return Gumbel2(self.params["alpha"], self.params["lambda"])


@dataclass(frozen=True)
class CriteriaRow:
    neg_loglik: float
    aic: float
    aicc: float
    bic: float

    def as_dict(self) -> dict:
        return {"neg_loglik": self.neg_loglik, "aic": self.aic, "aicc": self.aicc,
                "bic": self.bic}


def _values(s) -> np.ndarray:
    return np.asarray(s.values if isinstance(s, Sample) else s, dtype=float)


def log_likelihood(d: Distribution, s) -> float:
    """Sum of log densities of the sample under ``d``."""
    return math.fsum(np.atleast_1d(d.logpdf(_values(s))))


def gumbel2_profile_score(x: np.ndarray, alpha: float) -> float:
    """Derivative in alpha of the Gumbel-II log-likelihood with lambda profiled
    out at n / sum x^-alpha."""
    lx = np.log(x)
    wts = special.softmax(-alpha * lx)
    return x.size / alpha + x.size * float(wts @ lx) - math.fsum(lx)


def _profile_lambda(x: np.ndarray, alpha: float) -> float:
    # n / sum x^-alpha without overflowing for large alpha
    return math.exp(math.log(x.size) - special.logsumexp(-alpha * np.log(x)))


def _fit_gumbel2(x: np.ndarray) -> tuple[dict, int]:
    if np.any(x <= 0):
        raise DomainError("gumbel2 needs strictly positive data")
    if np.ptp(x) == 0:
        raise NonConvergenceError("gumbel2 likelihood is unbounded for a constant sample")
    # the score is +inf at 0 and negative for large alpha; expand until bracketed
    lo, hi = 1e-3, 1.0
    it = 0
    while gumbel2_profile_score(x, hi) > 0:
        lo, hi = hi, 2.0 * hi
        it += 1
        if it > MAX_ITER:
            raise NonConvergenceError("could not bracket the gumbel2 shape")
    while gumbel2_profile_score(x, lo) < 0:
        lo /= 2.0
        it += 1
        if it > MAX_ITER:
            raise NonConvergenceError("could not bracket the gumbel2 shape")
    try:
        alpha, res = optimize.brentq(lambda a: gumbel2_profile_score(x, a), lo, hi,
                                     xtol=ALPHA_TOL, rtol=4 * np.finfo(float).eps,
                                     maxiter=MAX_ITER, full_output=True)
    except RuntimeError as exc:
        raise NonConvergenceError(f"gumbel2 shape search failed: {exc}") from None
    return {"alpha": alpha, "lambda": _profile_lambda(x, alpha)}, it + res.iterations


def fit_mle(model: str, s) -> FitResult:
    """Maximum-likelihood fit of ``exp`` (closed form) or ``gumbel2`` (profile
    likelihood in the shape, scale solved exactly)."""
    mid = _model_id(model)
    x = _values(s)
    if x.size == 0:
        raise DomainError("sample is empty")
    if np.any(x < 0) or not np.all(np.isfinite(x)):
        raise DomainError("data must be finite and non-negative")
    if mid == "exp":
        m = float(np.mean(x))
        if not m > 0:
            raise DomainError("exponential fit needs a positive mean")
        params, k, it = {"lambda": 1.0 / m}, 1, 0
    else:
        params, it = _fit_gumbel2(x)
        k = 2
    fit = FitResult(mid, params, 0.0, k, x.size, it)
    ll = log_likelihood(fit.distribution(), x)
    return FitResult(mid, params, ll, k, x.size, it)


def information_criteria(f: FitResult, strict: bool = True) -> CriteriaRow:
    """AIC = 2k + 2 nll, AICc = AIC + 2k(k+1)/(n-k-1), BIC = k ln n + 2 nll.
    AICc is undefined for n <= k+1: an error when ``strict``, else NaN."""
    nll = f.neg_loglik
    aic = 2.0 * f.k + 2.0 * nll
    if f.n > f.k + 1:
        aicc = aic + 2.0 * f.k * (f.k + 1) / (f.n - f.k - 1)
    elif strict:
        raise DomainError(f"AICc undefined for n={f.n}, k={f.k}")
    else:
        aicc = math.nan
    return CriteriaRow(nll, aic, aicc, f.k * math.log(f.n) + 2.0 * nll)


def gof_report(s, models=MODELS) -> ReportTable:
    """Fit every model, rank ascending by AIC (ties: BIC, then model id).
    Models that fail to fit are left out; if none fits the call fails."""
    rows, failures = [], {}
    for m in dict.fromkeys(_model_id(m) for m in models):
        try:
            fit = fit_mle(m, s)
        except WigfError as exc:
            failures[m] = str(exc)
            continue
        crit = information_criteria(fit, strict=False)
        rows.append({"model": m, **crit.as_dict(), "lambda": fit.params["lambda"],
                     "alpha": fit.params.get("alpha"), "k": fit.k, "n": fit.n})
    if not rows:
        raise NonConvergenceError(f"no model could be fitted: {failures}")
    rows.sort(key=lambda r: (r["aic"], r["bic"], r["model"]))
    for rank, r in enumerate(rows, 1):
        r["rank"] = rank
    columns = ("neg_loglik", "aic", "aicc", "bic", "lambda", "alpha")
    table = ReportTable(keys=("rank", "model"), columns=columns,
                        meta={"failed": failures} if failures else {})
    table.extend(rows)
    return table


def parse_values(text: str, source: str = "<input>") -> Sample:
    """One number per row, optional ``value`` header; commas also separate."""
    vals = []
    for row, line in enumerate(text.splitlines(), 1):
        for tok in line.split(","):
            tok = tok.strip()
            if not tok or (row == 1 and tok.lower() == "value"):
                continue
            try:
                vals.append(float(tok))
            except ValueError:
                raise InputError(f"{source}: row {row}: {tok!r} is not a number") from None
    if not vals:
        raise InputError(f"{source}: no values")
    try:
        return Sample(np.array(vals), source=source)
    except DomainError as exc:
        raise InputError(f"{source}: {exc}") from None


def load_fixture(name: str) -> Sample:
    """Bundled data set: ``bladder`` (n=128) or ``relief`` (n=20)."""
    key = name.strip().lower()
    if key not in FIXTURES:
        raise DomainError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    text = resources.files("wigf").joinpath("data", f"{key}.csv").read_text()
    return parse_values(text, source=key)
