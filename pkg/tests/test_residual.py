import math

import numpy as np
import pytest

from wigf import residual as rs
from wigf.dist import Exponential, Pareto1, Uniform, Weibull
from wigf.errors import DomainError, SupportMismatchError
from wigf.igf import gwigf
from wigf.maps import MonotoneMap
from wigf.rigf import weighted_kl
from wigf.weights import ONE, X, parse_weight

E1, E2, E3 = Exponential(1.0), Exponential(2.0), Exponential(3.0)


def test_residual_gwigf_examples():
    assert rs.residual_gwigf(E1, X, 2.0, 1.0) == pytest.approx(0.75, rel=1e-9)
    assert rs.residual_gwigf(E2, X, 2.0, 0.0) == pytest.approx(0.25, rel=1e-9)
    assert rs.residual_gwigf(E1, X, 1.0, 2.0) == pytest.approx(3.0, rel=1e-9)
    assert rs.residual_gwigf(Pareto1(3.0, 2.0), X, 1.0, 3.0) == pytest.approx(4.5, rel=1e-9)


@pytest.mark.parametrize("lam,beta", [(0.5, 1.2), (2.0, 2.5), (1.3, 1.0)])
def test_residual_t0_reduces_to_gwigf(lam, beta):
    d = Exponential(lam)
    assert rs.residual_gwigf(d, X, beta, 0.0) == pytest.approx(lam ** (beta - 2) / beta ** 2,
                                                               rel=1e-9)
    assert rs.residual_gwigf(d, X, beta, 0.0) == pytest.approx(gwigf(d, X, beta), rel=1e-12)


def test_age_beyond_support():
    with pytest.raises(DomainError):
        rs.residual_gwigf(Uniform(0, 1), ONE, 1.0, 1.0)


def test_t_derivative_examples():
    assert rs.residual_derivative_t(E1, X, 2.0, 1.0) == pytest.approx(0.5, rel=1e-7)
    assert rs.residual_derivative_t(Uniform(0, 1), ONE, 1.0, 0.4) == pytest.approx(0.0, abs=1e-9)
    h = 1e-5
    fd = (rs.residual_gwigf(Weibull(2.0, 1.0), X, 1.7, 0.5 + h)
          - rs.residual_gwigf(Weibull(2.0, 1.0), X, 1.7, 0.5 - h)) / (2 * h)
    assert rs.residual_derivative_t(Weibull(2.0, 1.0), X, 1.7, 0.5) == pytest.approx(fd, rel=1e-6)


def test_cumulative_hazard_examples():
    assert rs.cumulative_hazard(E2, 3.0) == pytest.approx(6.0)
    assert rs.cumulative_hazard(Weibull(2.0, 1.0), 0.0) == 0.0
    assert rs.cumulative_hazard(Weibull(2.0, 1.0), 2.0) == pytest.approx(4.0)


def test_hazard_expectation_examples():
    r = rs.verify_hazard_expectation(E1, ONE, 2.0)
    assert r.passed
    assert r.lhs == pytest.approx(0.25, rel=1e-8)
    assert rs.verify_hazard_expectation(E1, X, 1.0).passed
    assert rs.verify_hazard_expectation(Uniform(0, 1), ONE, 2.0).passed


def test_mrl_examples():
    for lam in (0.5, 2.0):
        for t in (0.0, 1.3):
            assert rs.mrl(Exponential(lam), t) == pytest.approx(1 / lam, rel=1e-9)
    assert rs.mrl(Uniform(0, 1), 0.0) == pytest.approx(0.5, rel=1e-12)
    for beta in (1.0, 2.0):
        assert rs.weighted_mrl(E1, X, 0.7, beta) == pytest.approx((beta * 0.7 + 1) / beta ** 2,
                                                                  rel=1e-9)


def test_equilibrium_identity_examples():
    r = rs.verify_equilibrium_identity(E1, X, 2.0, 1.0)
    assert r.passed and r.lhs == pytest.approx(0.75, rel=1e-9)
    r = rs.verify_equilibrium_identity(Uniform(0, 1), ONE, 1.0, 0.0)
    assert r.passed and r.lhs == pytest.approx(1.0, rel=1e-9)
    assert rs.verify_equilibrium_identity(Weibull(2.0, 1.0), X, 2.0, 0.5).passed


def test_ph_hazard_identity():
    assert rs.verify_ph_hazard_identity(E1, X, 2.0, 1.0).passed
    assert rs.verify_ph_hazard_identity(Weibull(2.0, 1.0), X, 1.5, 0.3).passed


def test_bound_examples():
    b = rs.residual_bound(E1, X, 2.0, 1.0)
    assert b.value == pytest.approx(0.75) and b.bound == pytest.approx(0.5)
    assert b.direction == "increasing" and b.satisfied
    b = rs.residual_bound(Exponential(2.0), X, 1.0, 0.8)
    assert b.value == pytest.approx(1.3) and b.bound == pytest.approx(0.8) and b.satisfied
    b = rs.residual_bound(E1, ONE, 1.0, 0.5)
    assert b.value == pytest.approx(1.0) and b.bound == pytest.approx(1.0)
    assert b.direction == "constant" and b.satisfied


def test_monotone_direction():
    assert rs.monotone_direction([1, 2, 3]) == "increasing"
    assert rs.monotone_direction([3, 2, 2]) == "decreasing"
    assert rs.monotone_direction([1, 1, 1]) == "constant"
    assert rs.monotone_direction([1, 3, 2]) == "non-monotone"


def test_ordering_examples():
    r = rs.residual_ordering_check(E1, E2, ONE, (1.0, 2.0), (0.1, 1.0))
    assert r.premises_hold and r.holds
    r = rs.residual_ordering_check(E1, E1, ONE, (2.0,), (0.5,))
    assert r.holds and r.lhs == r.rhs
    w = parse_weight("invshift:b=1")
    r = rs.residual_ordering_check(E1, E3, w, (1.0, 2.0), (0.1, 1.0))
    assert r.premises_hold and r.holds


def test_residual_gwrigf_examples():
    for t in (0.0, 0.7, 2.0):
        assert rs.residual_gwrigf(E2, E2, ONE, 2.0, t) == pytest.approx(1.0, rel=1e-9)
    assert rs.residual_gwrigf(E2, E1, X, 2.0, 0.0) == pytest.approx(4 / 9, rel=1e-9)
    c, g = 4.0, 3.0
    for t in (1.5, 3.0):
        v = rs.residual_gwrigf(Pareto1(c, 1.0), Pareto1(g, 1.0), X, 1.0, t)
        assert v == pytest.approx(c * t / (c - 1), rel=1e-9)


def test_pareto_pair_is_linear_in_age():
    f, g = Pareto1(4.0, 1.0), Pareto1(3.0, 1.0)
    ts = np.array([1.5, 2.0, 3.0, 5.0])
    v = np.array([rs.residual_gwrigf(f, g, X, 1.6, t) for t in ts])
    np.testing.assert_allclose(np.diff(v) / np.diff(ts), (v[1] - v[0]) / 0.5, rtol=1e-7)


def test_dead_reference_law():
    with pytest.raises(SupportMismatchError):
        rs.residual_gwrigf(E1, Uniform(0, 1), ONE, 1.0, 1.5)


def test_residual_kl_examples():
    assert rs.residual_weighted_kl(E2, E2, X, 1.0) == pytest.approx(0.0, abs=1e-14)
    assert rs.residual_weighted_kl(Weibull(2.0, 1.0), E1, X, 0.0) == \
        pytest.approx(weighted_kl(Weibull(2.0, 1.0), E1, X), rel=1e-9)
    assert rs.residual_weighted_kl(E2, E1, ONE, 1.0) == \
        pytest.approx(math.log(2) - 0.5, rel=1e-9)


def test_residual_transform_identity():
    r = rs.verify_residual_transform(E2, E1, X, MonotoneMap.sqrt(), 1.5, 0.8)
    assert r.passed
    with pytest.raises(DomainError):
        rs.residual_gwrigf_transformed(E2, E1, X, MonotoneMap.reciprocal(), 1.5, 0.8)
