import math

import numpy as np
import pytest

from wigf.dist import Exponential, Pareto1, Uniform, Weibull, lomax
from wigf.errors import DivergenceError, IntegrationError
from wigf.integrate import QuadSpec, integrate, integrate_tail, quad, tolerance


def test_examples():
    v, err = integrate(QuadSpec(lambda x: np.exp(-x), 0.0, math.inf))
    assert v == pytest.approx(1.0, abs=1e-10)
    assert err <= max(1e-12, 1e-10 * abs(v))
    assert integrate(QuadSpec(lambda x: 2 * x, 0.0, 1.0))[0] == pytest.approx(1.0, abs=1e-12)
    v, _ = integrate(QuadSpec(lambda x: x * 4 * np.exp(-4 * x), 0.0, math.inf))
    assert v == pytest.approx(0.25, abs=1e-10)


def test_tail_examples():
    spec = QuadSpec(lambda x: np.exp(-x), 0.0, math.inf)
    assert integrate_tail(spec, 1.0) == pytest.approx(math.exp(-1), abs=1e-10)
    assert integrate_tail(spec, 0.0) == pytest.approx(integrate(spec)[0], abs=1e-14)
    tri = QuadSpec(lambda x: 2 * (1 - x), 0.0, 1.0)
    assert integrate_tail(tri, 0.5) == pytest.approx(0.25, abs=1e-12)


def test_additivity():
    rng = np.random.default_rng(3)
    f = lambda x: np.exp(-x) * np.sin(x) ** 2  # noqa: E731
    for _ in range(20):
        a, b, c = np.sort(rng.uniform(0, 10, 3))
        whole = quad(f, a, c).value
        assert whole == pytest.approx(quad(f, a, b).value + quad(f, b, c).value, abs=1e-9)


@pytest.mark.parametrize("d", [Exponential(2.0), Weibull(1.5, 2.0), Pareto1(3.0, 1.0),
                               lomax(4.0), Uniform(0, 2)], ids=lambda d: d.spec)
def test_semi_infinite_matches_truncation(d):
    lo, hi = d.support
    full = quad(lambda x: x * d.density(x), lo, hi).value
    cut = float(d.quantile(1 - 1e-12))
    trunc = quad(lambda x: x * d.density(x), lo, cut).value
    assert full == pytest.approx(trunc, abs=1e-8 * max(1.0, abs(full)) + 1e-9 * cut)


def test_integrable_endpoint_singularity():
    assert quad(lambda x: x ** -0.5, 0.0, 1.0).value == pytest.approx(2.0, rel=1e-9)
    v = quad(lambda x: x ** -0.5 * np.exp(-x), 0.0, math.inf).value
    assert v == pytest.approx(math.sqrt(math.pi), rel=1e-9)


def test_scale_robust_tail():
    assert quad(lambda x: 1e6 * np.exp(-1e6 * x), 0.0, math.inf,
                points=[1e-6]).value == pytest.approx(1.0, rel=1e-9)


def test_heavy_tail_is_resolved():
    v = quad(lambda x: (1 + x) ** -1.5, 0.0, math.inf).value
    assert v == pytest.approx(2.0, rel=1e-8)


def test_divergence_detected():
    with pytest.raises(DivergenceError):
        quad(lambda x: 1.0 / x, 0.0, 1.0)
    with pytest.raises(DivergenceError):
        quad(lambda x: np.exp(x), 0.0, math.inf)


def test_nan_integrand_rejected():
    with pytest.raises(IntegrationError):
        quad(lambda x: np.full_like(x, np.nan), 0.0, 1.0)


def test_reversed_and_doubly_infinite_limits():
    g = lambda x: np.exp(-x * x)  # noqa: E731
    assert quad(g, -math.inf, math.inf).value == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    assert quad(g, 1.0, 0.0).value == pytest.approx(-quad(g, 0.0, 1.0).value)


def test_tolerance_context():
    with tolerance(rtol=1e-4):
        from wigf.integrate import default_tolerance
        assert default_tolerance()[0] == 1e-4
    with pytest.raises(ValueError):
        with tolerance(rtol=-1):
            pass


def test_quadspec_validation():
    with pytest.raises(ValueError):
        QuadSpec(lambda x: x, 1.0, 0.0)
