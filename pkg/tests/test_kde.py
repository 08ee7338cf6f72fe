import importlib

import numpy as np
import pytest
from scipy import integrate as sint
from scipy import stats

from wigf.errors import EstimationError
from wigf.estimate import _kernels_py
from wigf.estimate.kde import KdeSpec, kde_pdf, kde_survival, np_residual_gwigf, \
    silverman_bandwidth

try:
    _compiled = importlib.import_module("wigf.estimate._kernels")
except ImportError:  # extension not built
    _compiled = None

BACKENDS = [pytest.param(_kernels_py, id="python"),
            pytest.param(_compiled, id="cython",
                         marks=pytest.mark.skipif(_compiled is None, reason="not compiled"))]


@pytest.mark.parametrize("k", BACKENDS)
def test_pdf_examples(k):
    one = np.array([0.0])
    three = np.array([1.0, 2.0, 3.0])
    assert k.gauss_kde(np.array([0.0]), one, 1.0)[0] == pytest.approx(0.398942, abs=1e-6)
    assert k.gauss_kde(np.array([2.0]), three, 1.0)[0] == pytest.approx(0.294295, abs=1e-6)


@pytest.mark.parametrize("k", BACKENDS)
def test_tail_examples(k):
    three = np.array([1.0, 2.0, 3.0])
    assert k.gauss_tail(-1e6, three, 1.0) == pytest.approx(1.0, abs=1e-9)
    assert k.gauss_tail(0.0, np.array([0.0]), 1.0) == pytest.approx(0.5, abs=1e-15)
    assert k.gauss_tail(2.0, three, 1.0) == pytest.approx(0.5, abs=1e-15)


def test_backends_agree():
    if _compiled is None:
        pytest.skip("not compiled")
    rng = np.random.default_rng(5)
    data = np.sort(rng.exponential(2.0, 73))
    x = np.linspace(-1, 12, 301)
    np.testing.assert_allclose(_compiled.gauss_kde(x, data, 0.4),
                               _kernels_py.gauss_kde(x, data, 0.4), rtol=1e-13, atol=1e-300)
    for t in (0.0, 0.7, 5.0):
        assert _compiled.gauss_tail(t, data, 0.4) == pytest.approx(
            _kernels_py.gauss_tail(t, data, 0.4), rel=1e-13)
    a = _compiled.gauss_residual_integrand(x, data, 0.4, 1.7, np.log(0.6))
    b = _kernels_py.gauss_residual_integrand(x, data, 0.4, 1.7, np.log(0.6))
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)


def test_public_wrappers():
    spec = KdeSpec([1.0, 2.0, 3.0], 1.0)
    assert kde_pdf(spec, 2.0) == pytest.approx(0.294295, abs=1e-6)
    assert kde_pdf(spec, [2.0]).shape == (1,)
    assert kde_survival(spec, 2.0) == pytest.approx(0.5)


def test_estimator_small_bandwidth_limit():
    spec = KdeSpec([1.0, 2.0, 3.0], 0.1)
    assert np_residual_gwigf(spec, 1.0, 0.0) == pytest.approx(2.0, abs=0.05)


def test_estimator_consistency_large_sample():
    rng = np.random.default_rng(2024)
    spec = KdeSpec(rng.exponential(2.0, 10_000))
    assert np_residual_gwigf(spec, 2.0, 0.5) == pytest.approx(0.375, abs=0.05)


def test_estimator_matches_scipy_quadrature():
    rng = np.random.default_rng(3)
    spec = KdeSpec(rng.exponential(2.0, 50))
    s = kde_survival(spec, 0.5)
    ref = sint.quad(lambda x: x * (kde_pdf(spec, x) / s) ** 1.7, 0.5, np.inf, limit=500)[0]
    assert np_residual_gwigf(spec, 1.7, 0.5) == pytest.approx(ref, rel=1e-7)


def test_estimator_sample_mean_limit():
    rng = np.random.default_rng(9)
    x = 5.0 + rng.exponential(1.0, 200)
    spec = KdeSpec(x, 0.01 * np.std(x, ddof=1))
    assert np_residual_gwigf(spec, 1.0, 0.0) == pytest.approx(np.mean(x), rel=0.02)


def test_estimator_vanishing_survival():
    spec = KdeSpec([1.0, 2.0, 3.0], 0.1)
    with pytest.raises(EstimationError):
        np_residual_gwigf(spec, 1.5, 3.0 + 5 * 0.1 + 0.5)
    with pytest.raises(EstimationError):
        np_residual_gwigf(spec, 1.5, 3.5, normalizer="empirical")


def test_empirical_normalizer():
    spec = KdeSpec([1.0, 2.0, 3.0, 4.0], 0.3)
    a = np_residual_gwigf(spec, 1.0, 2.5, normalizer="empirical")
    b = np_residual_gwigf(spec, 1.0, 2.5, normalizer="kde")
    # at beta = 1 the value scales with 1/S(t)
    assert a * 0.5 == pytest.approx(b * kde_survival(spec, 2.5), rel=1e-9)


def test_silverman_examples():
    with pytest.raises(EstimationError):
        silverman_bandwidth([2.0, 2.0, 2.0])
    z = np.random.default_rng(42).standard_normal(100)
    assert 0.2 < silverman_bandwidth(z) < 0.6
    x = np.random.default_rng(1).exponential(1.0, 40)
    sd = np.std(x, ddof=1)
    iqr = stats.iqr(x)
    assert silverman_bandwidth(x) == pytest.approx(0.9 * min(sd, iqr / 1.34) * 40 ** -0.2)


def test_silverman_iqr_collapse_falls_back():
    x = [1.0] * 10 + [2.0]
    assert silverman_bandwidth(x) == pytest.approx(0.9 * np.std(x, ddof=1) * 11 ** -0.2)


def test_kde_integrates_to_one():
    spec = KdeSpec(np.random.default_rng(0).gamma(2.0, 1.0, 30))
    v = sint.quad(lambda x: kde_pdf(spec, x), -np.inf, np.inf, limit=200)[0]
    assert v == pytest.approx(1.0, abs=1e-8)
