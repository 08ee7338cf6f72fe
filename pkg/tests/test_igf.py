import math

import numpy as np
import pytest

from wigf import igf
from wigf.dist import Exponential, Pareto1, TriangularUp, Uniform, Weibull, lomax
from wigf.errors import DivergenceError, DomainError, IntegrationError
from wigf.maps import MonotoneMap
from wigf.weights import ONE, X, shift

E1, E2 = Exponential(1.0), Exponential(2.0)


def test_gwigf_examples():
    assert igf.gwigf(E2, X, 2.0) == pytest.approx(0.25, rel=1e-9)
    assert igf.gwigf(E2, X, 1.0) == pytest.approx(0.5, rel=1e-9)
    assert igf.gwigf(Uniform(0, 10), X, 2.0) == pytest.approx(0.5, rel=1e-9)


def test_public_beta_boundary():
    with pytest.raises(DomainError):
        igf.gwigf(E1, X, 0.5)
    assert igf.gwigf(E1, ONE, 0.5, public=False) == pytest.approx(2.0, rel=1e-9)


def test_divergent_integral_reported():
    with pytest.raises(IntegrationError):
        igf.gwigf(Pareto1(1.0, 1.0), X, 1.0)


def test_evaluate_methods():
    r = igf.evaluate(TriangularUp(), X, 3.0, "both")
    assert r.value == pytest.approx(1.6, rel=1e-9)
    assert r.quad_value == pytest.approx(r.closed_value, rel=1e-9)
    assert igf.evaluate(lomax(2.0), X, 2.0, "closed").value == pytest.approx(0.2, rel=1e-12)
    assert igf.evaluate(E1, shift(1.0), 2.0, "closed").value == pytest.approx(0.75)


def test_discrete_examples():
    assert igf.gwigf_discrete([0.6, 0.1, 0.3], [1, 2, 3], 1.0) == pytest.approx(1.7)
    assert igf.gwigf_discrete([0.2, 0.3, 0.5], [1, 1, 1], 1.0) == pytest.approx(1.0)
    assert igf.gwigf_discrete([0.5, 0.5], [1, 1], 2.0) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        igf.gwigf_discrete([0.5, 0.6], [1, 1], 1.0)


def test_derivative_examples():
    assert igf.gwigf_derivative(E1, ONE, 1.0, 1) == pytest.approx(-1.0, rel=1e-9)
    assert igf.gwigf_derivative(Uniform(0, 1), ONE, 2.0, 3) == pytest.approx(0.0, abs=1e-14)
    assert igf.gwigf_derivative(E1, ONE, 1.0, 2) == pytest.approx(2.0, rel=1e-9)


def test_weighted_entropy_k_examples():
    assert igf.weighted_entropy_k(E2, X, 0) == pytest.approx(0.5, rel=1e-9)
    assert igf.weighted_entropy_k(Uniform(0, 1), X, 1) == pytest.approx(0.0, abs=1e-14)
    assert igf.weighted_entropy_k(E1, X, 1) == pytest.approx(2.0, rel=1e-9)


def test_extropy_examples():
    assert igf.weighted_extropy(E2, X) == pytest.approx(-0.125, rel=1e-9)
    assert igf.weighted_extropy(Uniform(0, 1), ONE) == pytest.approx(-0.5, rel=1e-12)
    assert igf.weighted_extropy(E1, ONE) == pytest.approx(-0.25, rel=1e-9)


def test_varentropy_examples():
    assert igf.weighted_varentropy(E1, ONE) == pytest.approx(1.0, rel=1e-8)
    assert igf.weighted_varentropy(Uniform(0, 1), X) == pytest.approx(0.0, abs=1e-12)
    # Var(log f(X)) = lam^2 Var(X) = 1 for every rate
    assert igf.weighted_varentropy(E2, ONE) == pytest.approx(1.0, rel=1e-8)


def test_series_examples():
    v, _ = igf.gwigf_series(Weibull(2.0, 1.0), X, 1.0, 0)
    assert v == pytest.approx(Weibull(2.0, 1.0).mean(), rel=1e-9)
    assert igf.gwigf_series(Uniform(0, 1), ONE, 2.5, 0)[0] == pytest.approx(1.0)
    v, last = igf.gwigf_series(E1, ONE, 1.1, 20)
    assert v == pytest.approx(igf.gwigf(E1, ONE, 1.1), abs=1e-6)
    assert last < 1e-12


def test_cs_bounds_examples():
    r = igf.bounds_cs(E2, X, 2.0)
    assert (r.lower, r.center, r.upper) == pytest.approx((0.2327, 0.25, 0.2722), abs=1e-4)
    assert r.satisfied
    r = igf.bounds_cs(E1, ONE, 1.0)
    assert (r.lower, r.center, r.upper) == pytest.approx((1, 1, 1), rel=1e-9)
    r = igf.bounds_cs(Uniform(0, 1), ONE, 3.0)
    assert (r.lower, r.center, r.upper) == pytest.approx((1, 1, 1), rel=1e-9)


def test_hazard_bounds_examples():
    r = igf.bounds_hazard(E1, X, 1.0)
    assert (r.lower, r.center, r.upper) == pytest.approx((0.0, 0.25, 1.0), abs=1e-9)
    assert r.satisfied
    r = igf.bounds_hazard(E1, ONE, 1.0)
    assert (r.lower, r.center, r.upper) == pytest.approx((0.0, 0.5, 1.0), abs=1e-9)
    with pytest.raises(DivergenceError):
        igf.bounds_hazard(Uniform(0, 1), ONE, 1.0)


def test_transformed_examples():
    lomax_via_map = igf.gwigf_transformed(Pareto1(2.0, 1.0), X, MonotoneMap.shift(-1.0), 2.0)
    assert lomax_via_map == pytest.approx(0.2, rel=1e-9)
    assert igf.gwigf_transformed(E2, X, MonotoneMap.affine(1.0, 0.0), 2.0) == \
        pytest.approx(igf.gwigf(E2, X, 2.0), rel=1e-12)
    assert igf.gwigf_transformed(E1, ONE, MonotoneMap.affine(2.0, 0.0), 2.0) == \
        pytest.approx(0.25, rel=1e-9)


def test_transformed_matches_direct_law():
    from wigf.dist import Transformed
    m = MonotoneMap.sqrt()
    direct = igf.gwigf(Transformed(E1, m), X, 2.0)
    assert igf.gwigf_transformed(E1, X, m, 2.0) == pytest.approx(direct, rel=1e-8)


def test_convolution_density_is_gamma():
    z = np.array([0.5, 1.0, 3.0])
    np.testing.assert_allclose(igf.convolution_density(E1, E1, z), z * np.exp(-z), rtol=1e-10)


def test_convolution_bound_examples():
    # X = Y = exp(1): I^x_2(X + Y) = int z^3 e^{-2z} = 3/8 exceeds the product bound 1/4
    r = igf.convolution_gwigf_bound(E1, E1, 2.0)
    assert r.value == pytest.approx(0.375, rel=1e-8)
    assert r.bound == pytest.approx(0.25, rel=1e-9)
    assert not r.satisfied
    r = igf.convolution_gwigf_bound(E1, E2, 1.0)
    assert r.value == pytest.approx(r.bound, rel=1e-8)


def test_ordering_examples():
    r = igf.ordering_check(E2, E1, shift(1.0), X, (1.0, 1.5, 2.0, 3.0))
    assert r.premises_hold and r.holds
    r = igf.ordering_check(E1, E1, X, X)
    assert r.holds
    assert np.allclose(r.lhs, r.rhs)
    assert igf.gwigf(E2, ONE, 2.0) == pytest.approx(1.0)
    assert igf.gwigf(E1, ONE, 2.0) == pytest.approx(0.5)


def test_entropy_is_minus_first_derivative():
    d = Weibull(2.0, 1.5)
    assert igf.weighted_entropy(d, X) == pytest.approx(-igf.gwigf_derivative(d, X, 1.0, 1),
                                                       rel=1e-12)


def test_nonfinite_beta_rejected():
    with pytest.raises(DomainError):
        igf.gwigf(E1, X, math.inf)
