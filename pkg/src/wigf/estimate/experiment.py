"""Bootstrap and Monte Carlo harnesses for the residual generating-function
estimators.

Every replicate draws from its own generator, seeded from
``(seed, beta-index, t-index, n-index, replicate)``; cells are therefore
independent of each other and of the order in which they run, and a parallel
run is bit-identical to a sequential one.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from ..dist import Distribution, Exponential, Sample
from ..errors import DomainError, EstimationError, IntegrationError
from ..report import ReportTable
from .kde import NORMALIZERS, KdeSpec, np_residual_gwigf

__all__ = [
    "ExperimentGrid",
    "cell_rng",
    "bootstrap_bias_mse",
    "mle_rate_exponential",
    "parametric_residual_gwigf_exp",
    "monte_carlo_parametric",
    "exponential_truth",
    "simulation_grid",
    "parametric_grid",
    "PROTOCOLS",
    "FIXTURE_BANDWIDTHS",
]

PROTOCOLS = ("resample", "fresh")
COLUMNS = ("bias", "mse", "mean", "valid")


@dataclass(frozen=True)
class ExperimentGrid:
    """Cells (beta, t, n) plus everything needed to reproduce them.

    ``protocol`` decides what a replicate is.  ``"resample"`` draws one base
    sample per cell (or takes ``fixture``) and resamples it with replacement;
    ``"fresh"`` draws a new sample from ``generator`` for every replicate.
    With a fixture the ``ns`` field is ignored and n is the fixture size.
    """

    betas: tuple[float, ...]
    ts: tuple[float, ...]
    ns: tuple[int, ...] = (30,)
    replications: int = 250
    bootstrap: int = 600
    seed: int = 42
    generator: Distribution | None = None
    fixture: Sample | None = None
    bandwidth: float | str = "silverman"
    normalizer: str = "kde"
    protocol: str = "resample"

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        object.__setattr__(self, "ts", tuple(float(t) for t in self.ts))
        if self.fixture is not None:
            object.__setattr__(self, "ns", (self.fixture.n,))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        if not (self.betas and self.ts and self.ns):
            raise DomainError("grid needs at least one beta, t and n")
        if any(b < 1 for b in self.betas):
            raise DomainError("beta must be >= 1")
        if any(n < 2 for n in self.ns):
            raise DomainError("sample sizes must be at least 2")
        if self.replications < 1 or self.bootstrap < 1:
            raise DomainError("replication and bootstrap counts must be >= 1")
        if (self.generator is None) == (self.fixture is None):
            raise DomainError("give exactly one of generator and fixture")
        if self.protocol not in PROTOCOLS:
            raise DomainError(f"protocol must be one of {PROTOCOLS}")
        if self.protocol == "fresh" and self.generator is None:
            raise DomainError("the fresh protocol needs a generator")
        if self.normalizer not in NORMALIZERS:
            raise DomainError(f"normalizer must be one of {NORMALIZERS}")
        if isinstance(self.bandwidth, str):
            if self.bandwidth != "silverman":
                raise DomainError(f"unknown bandwidth rule {self.bandwidth!r}")
        elif not float(self.bandwidth) > 0:
            raise DomainError("bandwidth must be positive")

    def cells(self):
        for bi, beta in enumerate(self.betas):
            for ti, t in enumerate(self.ts):
                for ni, n in enumerate(self.ns):
                    yield (bi, ti, ni), (beta, t, n)

    def config(self) -> dict:
        return {
            "betas": list(self.betas), "ts": list(self.ts), "ns": list(self.ns),
            "replications": self.replications, "bootstrap": self.bootstrap,
            "seed": self.seed,
            "generator": None if self.generator is None else self.generator.spec,
            "fixture": None if self.fixture is None else str(self.fixture.source),
            "bandwidth": self.bandwidth, "normalizer": self.normalizer,
            "protocol": self.protocol,
        }


def cell_rng(seed: int, idx: tuple[int, int, int], rep: int) -> np.random.Generator:
    """Generator for replicate ``rep`` of cell ``idx``; rep = -1 is the base
    sample of the resample protocol."""
    return np.random.default_rng([int(seed), *idx, rep + 1])


def _draw(grid: ExperimentGrid, n: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.random(n)
    return np.atleast_1d(grid.generator.quantile(u))


def _replicate(grid: ExperimentGrid, idx, n, rep, base):
    rng = cell_rng(grid.seed, idx, rep)
    if grid.protocol == "fresh":
        return _draw(grid, n, rng)
    return base[rng.integers(0, base.size, base.size)]


def _base(grid: ExperimentGrid, idx, n):
    if grid.fixture is not None:
        return np.asarray(grid.fixture.values)
    if grid.protocol == "resample":
        return _draw(grid, n, cell_rng(grid.seed, idx, -1))
    return None


def _summarise(est: np.ndarray, truth: float) -> dict:
    if est.size == 0 or not np.all(np.isfinite(est)):
        return {"bias": math.nan, "mse": math.nan, "mean": math.nan, "valid": False}
    dev = est - truth
    return {"bias": math.fsum(dev) / est.size, "mse": math.fsum(dev * dev) / est.size,
            "mean": math.fsum(est) / est.size, "valid": True}


def _np_cell(args):
    grid, idx, (beta, t, n), truth = args
    base = _base(grid, idx, n)
    est = np.empty(grid.bootstrap)
    for rep in range(grid.bootstrap):
        x = _replicate(grid, idx, n, rep, base)
        try:
            spec = KdeSpec(x, grid.bandwidth)
            est[rep] = np_residual_gwigf(spec, beta, t, grid.normalizer)
        except (EstimationError, IntegrationError):
            est[rep] = math.nan
    return {"beta": beta, "t": t, "n": n, "truth": truth, **_summarise(est, truth)}


def _run(fn, jobs, workers):
    if workers is None:
        workers = 1
    if workers == 0:
        workers = os.cpu_count() or 1
    if workers == 1 or len(jobs) == 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=1))


def _table(rows, grid, kind) -> ReportTable:
    table = ReportTable(keys=("beta", "t", "n"), columns=COLUMNS,
                        meta={"estimator": kind, "config": grid.config()})
    table.extend(rows)
    return table


def bootstrap_bias_mse(grid: ExperimentGrid, truth: Callable[[float, float], float], *,
                       workers: int | None = 1) -> ReportTable:
    """Bias and MSE of the kernel estimator in every (beta, t, n) cell.

    ``truth(beta, t)`` is the target value.  A replicate whose estimate cannot
    be formed (vanishing estimated survival, failed quadrature) makes its
    cell invalid, with NaN statistics.  ``workers=0`` uses every CPU.
    """
    jobs = [(grid, idx, cell, float(truth(cell[0], cell[1]))) for idx, cell in grid.cells()]
    return _table(_run(_np_cell, jobs, workers), grid, "kernel")


def mle_rate_exponential(s) -> float:
    """Maximum-likelihood rate of an exponential sample: 1 / mean."""
    x = np.asarray(s.values if isinstance(s, Sample) else s, dtype=float)
    if x.size == 0:
        raise EstimationError("sample is empty")
    m = float(np.mean(x))
    if not m > 0:
        raise EstimationError("sample mean must be positive")
    return 1.0 / m


def parametric_residual_gwigf_exp(lam: float, beta: float, t: float) -> float:
    """Exponential residual generating function with weight x:
    lam^beta (beta lam t + 1) / (beta lam)^2."""
    lam, beta = float(lam), float(beta)
    if not lam > 0:
        raise DomainError("rate must be positive")
    return lam ** beta * (beta * lam * t + 1.0) / (beta * lam) ** 2


def exponential_truth(lam: float) -> Callable[[float, float], float]:
    def truth(beta, t):
        return parametric_residual_gwigf_exp(lam, beta, t)
    return truth


def _mle_cell(args):
    grid, idx, (beta, t, n), truth = args
    est = np.empty(grid.replications)
    for rep in range(grid.replications):
        x = _draw(grid, n, cell_rng(grid.seed, idx, rep))
        est[rep] = parametric_residual_gwigf_exp(mle_rate_exponential(x), beta, t)
    return {"beta": beta, "t": t, "n": n, "truth": truth, **_summarise(est, truth)}


def monte_carlo_parametric(grid: ExperimentGrid, *, workers: int | None = 1) -> ReportTable:
    """Bias and MSE of the exponential plug-in estimator over R = replications
    fresh samples per cell.  Replicate r of a cell uses the same generator
    stream as replicate r of the fresh kernel protocol."""
    if not isinstance(grid.generator, Exponential):
        raise DomainError("the parametric estimator needs an exponential generator")
    truth = exponential_truth(grid.generator.lam)
    jobs = [(grid, idx, cell, truth(cell[0], cell[1])) for idx, cell in grid.cells()]
    return _table(_run(_mle_cell, jobs, workers), grid, "parametric-exponential")


# fixed kernel bandwidths used for the bundled real data sets
FIXTURE_BANDWIDTHS = {"bladder": 0.20, "relief": 0.56}

SIM_BETAS = (1.2, 1.7, 2.5)
SIM_TS = (0.1, 0.2, 0.5, 0.7, 0.9)
SIM_NS = (30, 50, 70, 100)


def simulation_grid(**overrides) -> ExperimentGrid:
    """The kernel-estimator simulation design: exponential with rate 0.5,
    Silverman bandwidth, 600 fresh Monte Carlo samples per cell and the
    empirical survival normaliser."""
    g = ExperimentGrid(SIM_BETAS, SIM_TS, SIM_NS, replications=250, bootstrap=600, seed=42,
                       generator=Exponential(0.5), bandwidth="silverman",
                       normalizer="empirical", protocol="fresh")
    return replace(g, **overrides) if overrides else g


def parametric_grid(**overrides) -> ExperimentGrid:
    """Same cells and seeds with 250 replications for the plug-in estimator."""
    return simulation_grid(**overrides)

