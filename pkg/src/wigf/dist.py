"""Probability models on the non-negative half line (and a few on (0, 1)).

All models are immutable and vectorised.  Public methods accept scalars or
arrays and return the same shape; values outside the support are handled
(density 0, survival 1 or 0) rather than rejected.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .errors import DomainError, InfiniteMeanError, UnsupportedModelError
from .integrate import quad
from .maps import MonotoneMap

__all__ = [
    "anchor_points",
    "Sample",
    "Distribution",
    "Uniform",
    "Exponential",
    "InvertedExponential",
    "Weibull",
    "Pareto1",
    "Gumbel2",
    "TriangularUp",
    "TriangularDown",
    "Transformed",
    "ProportionalHazards",
    "Numeric",
    "lomax",
    "parse_model",
]


def _scalar_or(x_in, out):
    return float(out[0]) if np.ndim(x_in) == 0 else out.reshape(np.shape(x_in))


@dataclass(frozen=True, eq=False)
class Sample:
    """Sorted, finite, non-negative observations plus where they came from."""

    values: np.ndarray
    source: object = None

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float).ravel())
        if v.size == 0:
            raise DomainError("sample is empty")
        if not np.all(np.isfinite(v)):
            raise DomainError("sample contains non-finite values")
        if v[0] < 0:
            raise DomainError("sample contains negative values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __eq__(self, other):
        return isinstance(other, Sample) and np.array_equal(self.values, other.values)

    __hash__ = None

    @property
    def n(self) -> int:
        return self.values.size

    def mean(self) -> float:
        return float(np.mean(self.values))


class Distribution(ABC):
    """Base class.  Subclasses implement the underscored kernels, which only
    ever see points inside the support."""

    model_id: str = "abstract"
    open_lo: bool = False

    # -- to implement -------------------------------------------------------
    @property
    @abstractmethod
    def support(self) -> tuple[float, float]: ...

    @property
    @abstractmethod
    def params(self) -> dict[str, float]: ...

    @abstractmethod
    def _logpdf(self, x: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def _cdf(self, x: np.ndarray) -> np.ndarray: ...

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def _logsf(self, x):
        with np.errstate(divide="ignore"):
            return np.log(self._sf(x))

    def _pdf(self, x):
        return np.exp(self._logpdf(x))

    def _ppf(self, u):
        raise UnsupportedModelError(f"{self.model_id} has no quantile function")

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Interior points where the density is not smooth."""
        return ()

    # -- public API ----------------------------------------------------------
    @property
    def spec(self) -> str:
        args = ",".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.model_id}:{args}" if args else self.model_id

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"

    def _inside(self, x):
        lo, hi = self.support
        left = x > lo if self.open_lo else x >= lo
        return left & (x <= hi)

    def density(self, x):
        x1 = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(x1)
        m = self._inside(x1)
        if m.any():
            with np.errstate(over="ignore", under="ignore", divide="ignore"):
                out[m] = self._pdf(x1[m])
        return _scalar_or(x, out)

    pdf = density

    def logpdf(self, x):
        x1 = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.full_like(x1, -np.inf)
        m = self._inside(x1)
        if m.any():
            with np.errstate(divide="ignore", over="ignore"):
                out[m] = self._logpdf(x1[m])
        return _scalar_or(x, out)

    def cdf(self, x):
        x1 = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.support
        out = np.where(x1 > hi, 1.0, 0.0)
        m = self._inside(x1)
        if m.any():
            with np.errstate(over="ignore", under="ignore", divide="ignore"):
                out[m] = np.clip(self._cdf(x1[m]), 0.0, 1.0)
        return _scalar_or(x, out)

    def survival(self, x):
        x1 = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.support
        out = np.where(x1 > hi, 0.0, 1.0)
        m = self._inside(x1)
        if m.any():
            with np.errstate(over="ignore", under="ignore", divide="ignore"):
                out[m] = np.clip(self._sf(x1[m]), 0.0, 1.0)
        return _scalar_or(x, out)

    sf = survival

    def log_survival(self, x):
        x1 = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.support
        out = np.where(x1 > hi, -np.inf, 0.0)
        m = self._inside(x1)
        if m.any():
            with np.errstate(over="ignore", under="ignore", divide="ignore"):
                out[m] = np.minimum(self._logsf(x1[m]), 0.0)
        return _scalar_or(x, out)

    def hazard(self, x):
        """f(x) / S(x); raises :class:`DomainError` where S(x) = 0."""
        x1 = np.atleast_1d(np.asarray(x, dtype=float))
        ls = np.atleast_1d(self.log_survival(x1))
        if np.any(np.isneginf(ls)):
            bad = x1[np.isneginf(ls)][0]
            raise DomainError(f"hazard undefined: survival vanishes at x={bad!r}")
        with np.errstate(divide="ignore", under="ignore"):
            out = np.exp(np.atleast_1d(self.logpdf(x1)) - ls)
        return _scalar_or(x, out)

    def cumulative_hazard(self, x):
        """-log S(x); raises :class:`DomainError` where S(x) = 0."""
        ls = np.atleast_1d(self.log_survival(x))
        if np.any(np.isneginf(ls)):
            raise DomainError("cumulative hazard undefined where survival vanishes")
        return _scalar_or(x, -ls + 0.0)

    def quantile(self, u):
        u1 = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any(~((u1 > 0) & (u1 < 1))):
            raise DomainError("quantile needs 0 < u < 1")
        return _scalar_or(u, np.asarray(self._ppf(u1), dtype=float))

    ppf = quantile

    def sample(self, n: int, seed=None) -> Sample:
        """Inverse-CDF draw of ``n`` values; ``seed`` is anything accepted by
        :func:`numpy.random.default_rng`."""
        if n < 1:
            raise DomainError("sample size must be at least 1")
        rng = np.random.default_rng(seed)
        return Sample(self.rvs(n, rng), source=(self.spec, n, seed if isinstance(seed, int) else None))

    def rvs(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Unsorted inverse-CDF draws from an existing generator."""
        u = rng.random(n)
        u = np.where(u == 0.0, np.nextafter(0.0, 1.0), u)
        return np.asarray(self._ppf(u), dtype=float)

    def log_likelihood(self, s) -> float:
        """Sum of log densities; ``-inf`` if any value lies outside the support."""
        x = np.asarray(s.values if isinstance(s, Sample) else s, dtype=float)
        return float(math.fsum(np.atleast_1d(self.logpdf(x))))

    def mean(self) -> float:
        lo, hi = self.support
        res = quad(lambda x: x * self.density(x), lo, hi, points=self.breakpoints)
        return res.value

    def expect(self, fn: Callable[[np.ndarray], np.ndarray], lo: float | None = None) -> float:
        """E[fn(X)] (over ``[lo, hi]`` when ``lo`` is given) by quadrature."""
        a, b = self.support
        a = a if lo is None else max(a, lo)
        pts = [p for p in self.breakpoints if a < p < b]
        return quad(lambda x: fn(x) * self.density(x), a, b, points=pts).value


# ---------------------------------------------------------------------------
# parametric families
# ---------------------------------------------------------------------------

def _pos(obj, attr, name=None):
    v = float(getattr(obj, attr))
    if not (v > 0 and math.isfinite(v)):
        raise DomainError(f"parameter {name or attr} must be positive and finite, got {v}")
    object.__setattr__(obj, attr, v)


@dataclass(frozen=True, repr=False)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0
    model_id = "uniform"

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DomainError("uniform needs finite a < b")

    @property
    def support(self):
        return (float(self.a), float(self.b))

    @property
    def params(self):
        return {"a": self.a, "b": self.b}

    def _pdf(self, x):
        return np.full_like(x, 1.0 / (self.b - self.a))

    def _logpdf(self, x):
        return np.full_like(x, -math.log(self.b - self.a))

    def _cdf(self, x):
        return (x - self.a) / (self.b - self.a)

    def _sf(self, x):
        return (self.b - x) / (self.b - self.a)

    def _ppf(self, u):
        return self.a + u * (self.b - self.a)

    def mean(self):
        return 0.5 * (self.a + self.b)


@dataclass(frozen=True, repr=False)
class Exponential(Distribution):
    """Rate parameterisation: f(x) = lam * exp(-lam x)."""

    lam: float = 1.0
    model_id = "exp"

    def __post_init__(self):
        _pos(self, "lam", "lambda")

    @property
    def support(self):
        return (0.0, math.inf)

    @property
    def params(self):
        return {"lambda": self.lam}

    def _logpdf(self, x):
        return math.log(self.lam) - self.lam * x

    def _cdf(self, x):
        return -np.expm1(-self.lam * x)

    def _sf(self, x):
        return np.exp(-self.lam * x)

    def _logsf(self, x):
        return -self.lam * x

    def _ppf(self, u):
        return -np.log1p(-u) / self.lam

    def mean(self):
        return 1.0 / self.lam


@dataclass(frozen=True, repr=False)
class InvertedExponential(Distribution):
    """f(x) = exp(-1/(lam x)) / (lam x^2), F(x) = exp(-1/(lam x))."""

    lam: float = 1.0
    model_id = "invexp"
    open_lo = True

    def __post_init__(self):
        _pos(self, "lam", "lambda")

    @property
    def support(self):
        return (0.0, math.inf)

    @property
    def params(self):
        return {"lambda": self.lam}

    def _logpdf(self, x):
        return -math.log(self.lam) - 2.0 * np.log(x) - 1.0 / (self.lam * x)

    def _cdf(self, x):
        return np.exp(-1.0 / (self.lam * x))

    def _sf(self, x):
        return -np.expm1(-1.0 / (self.lam * x))

    def _logsf(self, x):
        return np.log(self._sf(x))

    def _ppf(self, u):
        return -1.0 / (self.lam * np.log(u))

    def mean(self):
        raise InfiniteMeanError("inverted exponential has an infinite mean")


@dataclass(frozen=True, repr=False)
class Weibull(Distribution):
    """Shape ``delta``, scale ``theta``: S(x) = exp(-(x/theta)^delta)."""

    delta: float = 1.0
    theta: float = 1.0
    model_id = "weibull"

    def __post_init__(self):
        _pos(self, "delta", "delta")
        _pos(self, "theta", "theta")

    @property
    def support(self):
        return (0.0, math.inf)

    @property
    def params(self):
        return {"delta": self.delta, "theta": self.theta}

    @property
    def open_lo(self):
        # the density is infinite at 0 when delta < 1
        return self.delta < 1

    def _logpdf(self, x):
        z = x / self.theta
        core = 0.0 if self.delta == 1.0 else (self.delta - 1.0) * np.log(z)
        return math.log(self.delta / self.theta) + core - z ** self.delta

    def _cdf(self, x):
        return -np.expm1(-(x / self.theta) ** self.delta)

    def _sf(self, x):
        return np.exp(-(x / self.theta) ** self.delta)

    def _logsf(self, x):
        return -(x / self.theta) ** self.delta

    def _ppf(self, u):
        return self.theta * (-np.log1p(-u)) ** (1.0 / self.delta)

    def mean(self):
        return self.theta * math.gamma(1.0 + 1.0 / self.delta)


@dataclass(frozen=True, repr=False)
class Pareto1(Distribution):
    """f(x) = c gamma^c x^(-c-1) on x >= gamma."""

    c: float = 1.0
    gamma: float = 1.0
    model_id = "pareto1"

    def __post_init__(self):
        _pos(self, "c", "c")
        _pos(self, "gamma", "gamma")

    @property
    def support(self):
        return (float(self.gamma), math.inf)

    @property
    def params(self):
        return {"c": self.c, "gamma": self.gamma}

    def _logpdf(self, x):
        return math.log(self.c) + self.c * math.log(self.gamma) - (self.c + 1.0) * np.log(x)

    def _cdf(self, x):
        return -np.expm1(self.c * np.log(self.gamma / x))

    def _sf(self, x):
        return (self.gamma / x) ** self.c

    def _logsf(self, x):
        return self.c * np.log(self.gamma / x)

    def _ppf(self, u):
        return self.gamma * np.exp(-np.log1p(-u) / self.c)

    def mean(self):
        if self.c <= 1:
            raise InfiniteMeanError(f"pareto1 mean is infinite for c={self.c} <= 1")
        return self.c * self.gamma / (self.c - 1.0)


@dataclass(frozen=True, repr=False)
class Gumbel2(Distribution):
    """f(x) = alpha lam x^(-alpha-1) exp(-lam x^(-alpha)), x > 0."""

    alpha: float = 1.0
    lam: float = 1.0
    model_id = "gumbel2"
    open_lo = True

    def __post_init__(self):
        _pos(self, "alpha", "alpha")
        _pos(self, "lam", "lambda")

    @property
    def support(self):
        return (0.0, math.inf)

    @property
    def params(self):
        return {"alpha": self.alpha, "lambda": self.lam}

    def _logpdf(self, x):
        lx = np.log(x)
        return (math.log(self.alpha * self.lam) - (self.alpha + 1.0) * lx
                - self.lam * np.exp(-self.alpha * lx))

    def _cdf(self, x):
        return np.exp(-self.lam * x ** -self.alpha)

    def _sf(self, x):
        return -np.expm1(-self.lam * x ** -self.alpha)

    def _logsf(self, x):
        return np.log(self._sf(x))

    def _ppf(self, u):
        return (-np.log(u) / self.lam) ** (-1.0 / self.alpha)

    def mean(self):
        if self.alpha <= 1:
            raise InfiniteMeanError(f"gumbel2 mean is infinite for alpha={self.alpha} <= 1")
        return self.lam ** (1.0 / self.alpha) * math.gamma(1.0 - 1.0 / self.alpha)


@dataclass(frozen=True, repr=False)
class TriangularUp(Distribution):
    """f(u) = 2u on (0, 1)."""

    model_id = "tri-up"

    @property
    def support(self):
        return (0.0, 1.0)

    @property
    def params(self):
        return {}

    def _pdf(self, x):
        return 2.0 * x

    def _logpdf(self, x):
        with np.errstate(divide="ignore"):
            return math.log(2.0) + np.log(x)

    def _cdf(self, x):
        return x * x

    def _sf(self, x):
        return (1.0 - x) * (1.0 + x)

    def _ppf(self, u):
        return np.sqrt(u)

    def mean(self):
        return 2.0 / 3.0


@dataclass(frozen=True, repr=False)
class TriangularDown(Distribution):
    """f(u) = 2(1 - u) on (0, 1)."""

    model_id = "tri-down"

    @property
    def support(self):
        return (0.0, 1.0)

    @property
    def params(self):
        return {}

    def _pdf(self, x):
        return 2.0 * (1.0 - x)

    def _logpdf(self, x):
        with np.errstate(divide="ignore"):
            return math.log(2.0) + np.log1p(-x)

    def _cdf(self, x):
        return x * (2.0 - x)

    def _sf(self, x):
        return (1.0 - x) ** 2

    def _ppf(self, u):
        return 1.0 - np.sqrt(1.0 - u)

    def mean(self):
        return 1.0 / 3.0


# ---------------------------------------------------------------------------
# derived models
# ---------------------------------------------------------------------------

@dataclass(frozen=True, repr=False)
class Transformed(Distribution):
    """Law of ``psi(X)`` for a strictly monotone ``psi``."""

    base: Distribution
    psi: MonotoneMap
    name: str | None = None
    shown: tuple[str, ...] | None = None

    def __post_init__(self):
        lo, hi = self.base.support
        if self.psi.kind in ("power", "reciprocal") and lo < 0:
            raise DomainError(f"{self.psi.key} needs a non-negative base support")

    @property
    def model_id(self):
        return self.name or f"{self.base.model_id}|{self.psi.key}"

    @property
    def support(self):
        lo, hi = self.base.support
        return self.psi.image(lo, hi)

    @property
    def open_lo(self):
        blo, bhi = self.base.support
        if self.psi.increasing:
            return self.base.open_lo or math.isinf(self(blo))
        return math.isinf(bhi) or self.psi.kind == "reciprocal"

    def __call__(self, x):
        with np.errstate(divide="ignore"):
            return self.psi(x)

    @property
    def params(self):
        p = self.base.params
        return dict(p) if self.shown is None else {k: p[k] for k in self.shown}

    @property
    def spec(self):
        if self.name:
            return Distribution.spec.fget(self)
        return f"{self.base.spec}|{self.psi.key}"

    @property
    def breakpoints(self):
        lo, hi = self.support
        pts = [float(self.psi(p)) for p in self.base.breakpoints]
        return tuple(sorted(p for p in pts if lo < p < hi))

    def _logpdf(self, y):
        x = self.psi.inverse(y)
        jac = np.abs(self.psi.inverse_derivative(y))
        with np.errstate(divide="ignore"):
            return np.atleast_1d(self.base.logpdf(x)) + np.log(jac)

    def _pdf(self, y):
        x = self.psi.inverse(y)
        jac = np.abs(self.psi.inverse_derivative(y))
        return np.atleast_1d(self.base.density(x)) * jac

    def _cdf(self, y):
        x = self.psi.inverse(y)
        return np.atleast_1d(self.base.cdf(x) if self.psi.increasing else self.base.survival(x))

    def _sf(self, y):
        x = self.psi.inverse(y)
        return np.atleast_1d(self.base.survival(x) if self.psi.increasing else self.base.cdf(x))

    def _logsf(self, y):
        x = self.psi.inverse(y)
        if self.psi.increasing:
            return np.atleast_1d(self.base.log_survival(x))
        with np.errstate(divide="ignore"):
            return np.log(np.atleast_1d(self.base.cdf(x)))

    def _ppf(self, u):
        if self.psi.increasing:
            return self.psi(self.base._ppf(u))
        return self.psi(self.base._ppf(1.0 - u))


def lomax(c: float) -> Transformed:
    """Lomax law as Pareto-I(c, 1) shifted left by one: S(x) = (1 + x)^(-c)."""
    return Transformed(Pareto1(c, 1.0), MonotoneMap.shift(-1.0), name="lomax",
                       shown=("c",))


@dataclass(frozen=True, repr=False)
class ProportionalHazards(Distribution):
    """Survival S(x)^beta, hazard beta h(x)."""

    base: Distribution
    beta: float

    def __post_init__(self):
        _pos(self, "beta", "beta")

    @property
    def model_id(self):
        return f"ph({self.base.model_id})"

    @property
    def open_lo(self):
        return self.base.open_lo

    @property
    def support(self):
        return self.base.support

    @property
    def params(self):
        return {**self.base.params, "beta": self.beta}

    @property
    def spec(self):
        return f"ph[{self.base.spec}]:beta={self.beta!r}"

    @property
    def breakpoints(self):
        return self.base.breakpoints

    def _logpdf(self, x):
        ls = np.atleast_1d(self.base.log_survival(x))
        with np.errstate(invalid="ignore"):
            tail = np.where(self.beta == 1.0, 0.0, (self.beta - 1.0) * ls)
        return math.log(self.beta) + tail + np.atleast_1d(self.base.logpdf(x))

    def _cdf(self, x):
        return -np.expm1(self.beta * np.atleast_1d(self.base.log_survival(x)))

    def _sf(self, x):
        return np.exp(self._logsf(x))

    def _logsf(self, x):
        return self.beta * np.atleast_1d(self.base.log_survival(x))

    def _ppf(self, u):
        # S_base(x) = (1 - u)^(1/beta)
        return self.base._ppf(-np.expm1(np.log1p(-u) / self.beta))


@dataclass(frozen=True, repr=False, eq=False)
class Numeric(Distribution):
    """A density known only as a function; CDF and quantile by quadrature.

    ``fn`` need not be normalised unless ``normalize=False`` is passed; the
    normaliser is computed once at construction to 1e-12 relative accuracy.
    ``logfn``, when given, is the log of ``fn`` and is used for the log
    density, which then stays finite far into the tail where ``fn``
    underflows.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    label: str = "numeric"
    points: Sequence[float] = ()
    normalize: bool = True
    open_lo: bool = True
    logfn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)
    norm: float = field(init=False, default=1.0)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError("numeric density needs lo < hi")
        pts = tuple(sorted(float(p) for p in self.points if self.lo < p < self.hi))
        object.__setattr__(self, "points", pts)
        if self.normalize:
            z = quad(self.fn, self.lo, self.hi, rtol=1e-12, atol=1e-300, points=pts).value
            if not (z > 0 and math.isfinite(z)):
                raise DomainError(f"numeric density has non-positive normaliser {z}")
            object.__setattr__(self, "norm", z)

    model_id = "numeric"

    @property
    def support(self):
        return (float(self.lo), float(self.hi))

    @property
    def params(self):
        return {}

    @property
    def spec(self):
        return f"numeric[{self.label}]"

    @property
    def breakpoints(self):
        return self.points

    def _pdf(self, x):
        return np.asarray(self.fn(x), dtype=float) / self.norm

    def _logpdf(self, x):
        if self.logfn is not None:
            return np.asarray(self.logfn(x), dtype=float) - math.log(self.norm)
        with np.errstate(divide="ignore"):
            return np.log(self._pdf(x))

    def _mass(self, a, b):
        if a >= b:
            return 0.0
        pts = [p for p in self.points if a < p < b]
        return quad(lambda s: self.fn(s) / self.norm, a, b, rtol=1e-12, atol=1e-15,
                    points=pts).value

    def _cdf(self, x):
        return np.array([self._split(xi)[0] for xi in np.atleast_1d(x)])

    def _sf(self, x):
        return np.array([self._split(xi)[1] for xi in np.atleast_1d(x)])

    def _split(self, xi):
        # integrate over the shorter side so that cdf + sf == 1 exactly
        left = self._mass(self.lo, xi)
        if left <= 0.5:
            return left, 1.0 - left
        right = self._mass(xi, self.hi)
        return 1.0 - right, right

    def _ppf(self, u):
        out = np.empty_like(np.atleast_1d(u), dtype=float)
        for i, ui in enumerate(np.atleast_1d(u)):
            out[i] = self._ppf1(float(ui))
        return out

    def _ppf1(self, u):
        lo = self.lo
        hi = self.hi
        if math.isinf(hi):
            step = 1.0
            hi = lo + step
            while self._split(hi)[0] < u:
                lo, step = hi, 2.0 * step
                hi = lo + step
        return optimize.brentq(lambda x: self._split(x)[0] - u, lo, hi, xtol=1e-13, rtol=1e-13)


# ---------------------------------------------------------------------------
# spec grammar
# ---------------------------------------------------------------------------

_MODELS = {
    "uniform": (Uniform, {"a": "a", "b": "b"}),
    "exp": (Exponential, {"lambda": "lam"}),
    "exponential": (Exponential, {"lambda": "lam"}),
    "invexp": (InvertedExponential, {"lambda": "lam"}),
    "inverted-exponential": (InvertedExponential, {"lambda": "lam"}),
    "weibull": (Weibull, {"delta": "delta", "theta": "theta"}),
    "pareto1": (Pareto1, {"c": "c", "gamma": "gamma"}),
    "gumbel2": (Gumbel2, {"alpha": "alpha", "lambda": "lam"}),
    "tri-up": (TriangularUp, {}),
    "triangular-up": (TriangularUp, {}),
    "tri-down": (TriangularDown, {}),
    "triangular-down": (TriangularDown, {}),
}


def parse_model(text: str) -> Distribution:
    """Parse ``<id>:<key>=<val>[,<key>=<val>...]``, e.g. ``exp:lambda=0.5``.

    Recognised ids: uniform(a,b), exp(lambda), invexp(lambda),
    weibull(delta,theta), pareto1(c,gamma), lomax(c), gumbel2(alpha,lambda),
    tri-up, tri-down.  Omitted keys take the class defaults.
    """
    text = text.strip()
    head, _, rest = text.partition(":")
    head = head.strip().lower()
    kv: dict[str, float] = {}
    if rest.strip():
        for part in rest.split(","):
            k, eq, v = part.partition("=")
            if not eq:
                raise ValueError(f"bad model parameter {part!r} in {text!r}")
            try:
                kv[k.strip()] = float(v)
            except ValueError:
                raise ValueError(f"non-numeric value {v!r} for {k.strip()!r}") from None
    if head == "lomax":
        if set(kv) - {"c"}:
            raise ValueError(f"unknown lomax parameters {sorted(set(kv) - {'c'})}")
        return lomax(kv.get("c", 1.0))
    if head not in _MODELS:
        raise ValueError(f"unknown model id {head!r}")
    cls, names = _MODELS[head]
    unknown = set(kv) - set(names)
    if unknown:
        raise ValueError(f"unknown parameters {sorted(unknown)} for {head}")
    return cls(**{names[k]: v for k, v in kv.items()})


def numeric_from(fn: Callable[[np.ndarray], np.ndarray], like: Distribution,
                 label: str) -> Numeric:
    """Numeric model on the support of ``like`` (inheriting its break points)."""
    lo, hi = like.support
    return Numeric(fn, lo, hi, label=label, points=like.breakpoints)



def anchor_points(d: Distribution) -> list[float]:
    """Break points plus a few quantiles, used as initial panel edges so
    that adaptive quadrature sees where the mass is whatever the scale."""
    pts = set(d.breakpoints)
    if not isinstance(d, Numeric):
        pts.update(float(q) for q in np.atleast_1d(d.quantile(np.array([0.05, 0.5, 0.95]))))
    lo, hi = d.support
    return sorted(p for p in pts if lo < p < hi and math.isfinite(p))
