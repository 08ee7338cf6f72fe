"""Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.

Every generating-function value in the package is ultimately an integral
evaluated here, so this module doubles as the ground-truth oracle against
which closed forms are checked.

Panels are integrated with the 21-point Kronrod rule; the embedded 10-point
Gauss rule supplies the error estimate.  The panel with the largest error is
bisected until the global error meets ``max(atol, rtol * |value|)``.  Nodes
are strictly interior, so integrable endpoint singularities are never
evaluated.  A semi-infinite range is split at its outermost break point:
the near part stays in natural coordinates and the tail is mapped onto
(0, 1] by ``x = a + s (1 - v) / v``, with ``s`` the length of the near part.

Integrands must be vectorised: they receive a 1-d float array and return an
array of the same shape.
"""
from __future__ import annotations

import contextlib
import contextvars
import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DivergenceError, IntegrationError, NonConvergenceError

__all__ = [
    "QuadSpec",
    "QuadResult",
    "integrate",
    "integrate_tail",
    "quad",
    "tolerance",
    "default_tolerance",
]

# 21-point Kronrod abscissae (non-negative half) and weights, with the weights
# of the embedded 10-point Gauss rule whose nodes are _XGK[1::2].
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208636854525,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
_WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(21)
GAUSS_WEIGHTS[1:10:2] = _WG
GAUSS_WEIGHTS[11:20:2] = _WG[::-1]

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny

_TOLERANCE: contextvars.ContextVar[tuple[float, float]] = contextvars.ContextVar(
    "wigf_quad_tolerance", default=(1e-10, 1e-12)
)


def default_tolerance() -> tuple[float, float]:
    """Return the active ``(rtol, atol)`` pair."""
    return _TOLERANCE.get()


@contextlib.contextmanager
def tolerance(rtol: float | None = None, atol: float | None = None) -> Iterator[None]:
    """Temporarily override the default quadrature tolerances."""
    cur_r, cur_a = _TOLERANCE.get()
    rtol = cur_r if rtol is None else float(rtol)
    atol = cur_a if atol is None else float(atol)
    if rtol <= 0 or atol <= 0:
        raise ValueError("tolerances must be positive")
    token = _TOLERANCE.set((rtol, atol))
    try:
        yield
    finally:
        _TOLERANCE.reset(token)


class QuadResult(NamedTuple):
    value: float
    error: float
    panels: int


@dataclass(frozen=True)
class QuadSpec:
    """An integration request: integrand over ``[lo, hi]`` (``hi`` may be inf)."""

    integrand: Callable[[np.ndarray], np.ndarray]
    lo: float
    hi: float
    rtol: float | None = None
    atol: float | None = None
    limit: int = 2000
    points: Sequence[float] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        for tol in (self.rtol, self.atol):
            if tol is not None and tol <= 0:
                raise ValueError("tolerances must be positive")


def integrate(spec: QuadSpec) -> tuple[float, float]:
    """Integrate ``spec`` and return ``(value, error_estimate)``."""
    res = quad(spec.integrand, spec.lo, spec.hi, rtol=spec.rtol, atol=spec.atol,
               limit=spec.limit, points=spec.points)
    return res.value, res.error


def integrate_tail(spec: QuadSpec, t: float) -> float:
    """Integral of ``spec.integrand`` over ``[t, spec.hi]``."""
    if t < spec.lo:
        raise ValueError(f"tail start {t} below lower limit {spec.lo}")
    if t >= spec.hi:
        return 0.0
    pts = [p for p in spec.points if p > t]
    return quad(spec.integrand, t, spec.hi, rtol=spec.rtol, atol=spec.atol,
                limit=spec.limit, points=pts).value


def _mapped(f, lo, hi, scale=1.0):
    """Return (g, vlo, vhi, to_v) so that int_lo^hi f = int_vlo^vhi g.

    A semi-infinite range is mapped by x = a + scale (1 - v)/v with v in
    (0, 1], so that infinity sits at v = 0 where floating point is densest
    and slowly decaying tails stay resolvable.
    """
    if math.isfinite(lo):
        sign, a = scale, lo
    elif math.isfinite(hi):
        sign, a = -scale, hi
    else:
        raise AssertionError("doubly infinite intervals are split by the caller")

    def g(v):
        ok = v > 0
        out = np.zeros_like(v)
        vk = v[ok]
        out[ok] = f(a + sign * (1.0 - vk) / vk) * scale / vk / vk
        return out

    return g, 0.0, 1.0, (lambda x: 1.0 / (1.0 + (x - a) / sign))


def _eval_panels(g, a: np.ndarray, b: np.ndarray):
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = (centre[:, None] + half[:, None] * NODES[None, :]).ravel()
    with np.errstate(all="ignore"):
        fx = np.asarray(g(x), dtype=float).reshape(len(a), 21)
    if np.isnan(fx).any():
        bad = x.reshape(len(a), 21)[np.isnan(fx)][0]
        raise IntegrationError(f"integrand returned NaN at x={float(bad):.6g}")
    if np.isinf(fx).any():
        bad = x.reshape(len(a), 21)[np.isinf(fx)][0]
        raise DivergenceError(f"integrand is infinite at x={float(bad):.6g}")
    with np.errstate(all="ignore"):
        resk = fx @ KRONROD_WEIGHTS
        resg = fx @ GAUSS_WEIGHTS
        reskh = 0.5 * resk
        resabs = np.abs(fx) @ KRONROD_WEIGHTS
        resasc = np.abs(fx - reskh[:, None]) @ KRONROD_WEIGHTS
        err = np.abs((resk - resg) * half)
    if not (np.all(np.isfinite(resabs)) and np.all(np.isfinite(err))):
        raise DivergenceError("panel sum overflowed")
    resasc = resasc * np.abs(half)
    resabs = resabs * np.abs(half)
    with np.errstate(all="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > _TINY / (50.0 * _EPS), np.maximum(err, floor), err)
    return resk * half, err


def _adaptive(g, ulo, uhi, breaks, rtol, atol, limit):
    edges = np.array([ulo, *breaks, uhi], dtype=float)
    a, b = edges[:-1], edges[1:]
    vals, errs = _eval_panels(g, a, b)
    heap = []
    counter = 0
    for ai, bi, v, e in zip(a, b, vals, errs):
        heap.append((-e, counter, ai, bi, v, e))
        counter += 1
    heapq.heapify(heap)
    total = math.fsum(vals)
    total_err = math.fsum(errs)

    while True:
        if not math.isfinite(total):
            raise DivergenceError("integral overflowed")
        if total_err <= max(atol, rtol * abs(total)):
            # re-sum exactly before accepting
            total = math.fsum(h[4] for h in heap)
            total_err = math.fsum(h[5] for h in heap)
            if total_err <= max(atol, rtol * abs(total)):
                return QuadResult(total, total_err, len(heap))
        _, _, pa, pb, pv, pe = heap[0]
        mid = 0.5 * (pa + pb)
        too_narrow = (pb - pa) <= 64.0 * _EPS * max(abs(pa), abs(pb)) or not pa < mid < pb
        if too_narrow or len(heap) >= limit:
            # a worst panel pinched against an end is a non-integrable end
            # singularity even if the end panel itself still looks converged
            reach = 1e-12 * (uhi - ulo)
            at_edge = pa - ulo <= reach or uhi - pb <= reach
            where = "endpoint" if at_edge else "interior point"
            msg = (f"quadrature did not converge after {len(heap)} panels "
                   f"(value {total:.6g}, error {total_err:.3g}); worst panel "
                   f"[{pa:.6g}, {pb:.6g}] at an {where}")
            if at_edge:
                raise DivergenceError(msg)
            raise NonConvergenceError(msg)
        heapq.heappop(heap)
        v2, e2 = _eval_panels(g, np.array([pa, mid]), np.array([mid, pb]))
        for lo_, hi_, v, e in ((pa, mid, v2[0], e2[0]), (mid, pb, v2[1], e2[1])):
            heapq.heappush(heap, (-e, counter, lo_, hi_, v, e))
            counter += 1
        total += v2[0] + v2[1] - pv
        total_err += e2[0] + e2[1] - pe
        if total_err < 0:
            total_err = math.fsum(h[5] for h in heap)


def quad(f: Callable[[np.ndarray], np.ndarray], lo: float, hi: float, *,
         rtol: float | None = None, atol: float | None = None, limit: int = 2000,
         points: Sequence[float] = ()) -> QuadResult:
    """Integrate a vectorised ``f`` over ``[lo, hi]``.

    Parameters
    ----------
    f : callable
        Vectorised integrand.
    lo, hi : float
        Limits; either may be infinite.
    rtol, atol : float, optional
        Defaults come from :func:`tolerance` (``1e-10`` / ``1e-12``).
    limit : int
        Maximum number of panels.
    points : sequence of float
        Interior break points (kinks, discontinuities) used as initial panel
        edges.

    Raises
    ------
    DivergenceError
        The refinement stalls at an interval endpoint, the integrand is
        infinite at a node, or the sum overflows.
    NonConvergenceError
        The tolerance is not met within ``limit`` panels for other reasons.
    IntegrationError
        The integrand produced NaN.
    """
    d_rtol, d_atol = _TOLERANCE.get()
    rtol = d_rtol if rtol is None else rtol
    atol = d_atol if atol is None else atol
    lo, hi = float(lo), float(hi)
    points = sorted({float(p) for p in points if math.isfinite(p)})
    if lo == hi:
        return QuadResult(0.0, 0.0, 0)
    if lo > hi:
        r = quad(f, hi, lo, rtol=rtol, atol=atol, limit=limit, points=points)
        return QuadResult(-r.value, r.error, r.panels)
    if math.isinf(lo) and math.isinf(hi):
        left = quad(f, lo, 0.0, rtol=rtol, atol=0.5 * atol, limit=limit,
                    points=[p for p in points if p < 0])
        right = quad(f, 0.0, hi, rtol=rtol, atol=0.5 * atol, limit=limit,
                     points=[p for p in points if p > 0])
        return QuadResult(left.value + right.value, left.error + right.error,
                          left.panels + right.panels)
    if math.isinf(lo) != math.isinf(hi):
        # keep the finite end in natural coordinates, where an integrable
        # endpoint singularity can be resolved, and map only the tail.  The
        # split is the outermost break point (callers put these where the
        # mass is), else one unit out; the tail map inherits that length.
        if math.isfinite(lo):
            cut = max((p for p in points if p > lo), default=lo + 1.0)
            scale = cut - lo
        else:
            cut = min((p for p in points if p < hi), default=hi - 1.0)
            scale = hi - cut
        a, b = (lo, cut) if math.isfinite(lo) else (cut, hi)
        near = _adaptive(f, a, b, [p for p in points if a < p < b], rtol, 0.5 * atol, limit)
        t_lo, t_hi = (cut, hi) if math.isfinite(lo) else (lo, cut)
        g, vlo, vhi, to_v = _mapped(f, t_lo, t_hi, scale)
        inner = sorted({float(to_v(p)) for p in points if t_lo < p < t_hi})
        try:
            far = _adaptive(g, vlo, vhi, [v for v in inner if vlo < v < vhi], rtol, 0.5 * atol,
                            limit)
        except DivergenceError as exc:
            raise DivergenceError(f"integral diverges in the tail beyond {cut:.6g}") from exc
        return QuadResult(near.value + far.value, near.error + far.error,
                          near.panels + far.panels)
    return _adaptive(f, lo, hi, sorted({float(p) for p in points if lo < p < hi}), rtol, atol,
                     limit)
