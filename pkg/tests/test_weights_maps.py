import numpy as np
import pytest

from wigf.errors import DomainError
from wigf.maps import MonotoneMap, parse_map
from wigf.weights import ONE, X, derived_weights, parse_weight, power, shift


def test_weight_evaluation_examples():
    assert X(3.5) == 3.5
    assert power(2.0)(3.0) == 9.0
    assert ONE(17.0) == 1.0


def test_derived_weights_examples():
    s, q = derived_weights(X)
    assert s(4.0) == pytest.approx(2.0)
    assert q(4.0) == pytest.approx(16.0)
    assert derived_weights(power(2.0))[0](5.0) == pytest.approx(5.0)


def test_square_of_sqrt_is_identity():
    rng = np.random.default_rng(0)
    x = rng.uniform(0.01, 10.0, 100)
    for w in (ONE, X, power(3.0), shift(1.0), parse_weight("invx")):
        np.testing.assert_allclose(w.sqrt().square()(x), w(x), rtol=1e-12)


def test_reciprocal_rejects_zero():
    with pytest.raises(DomainError):
        parse_weight("invx")(0.0)


def test_weight_grammar_round_trip():
    for text in ("one", "x", "invx", "pow:m=2.0", "shift:b=1.0", "sqrt(shift:b=1.0)"):
        assert parse_weight(text).key == text
    with pytest.raises(ValueError):
        parse_weight("bogus")


@pytest.mark.parametrize("m", [MonotoneMap.affine(2.0, 1.0), MonotoneMap.sqrt(),
                               MonotoneMap.reciprocal(), MonotoneMap.shift(-1.0)])
def test_map_inverse_and_derivative(m):
    x = np.linspace(1.5, 4.0, 7)
    np.testing.assert_allclose(m.inverse(m(x)), x, rtol=1e-12)
    h = 1e-6
    np.testing.assert_allclose(m.derivative(x), (m(x + h) - m(x - h)) / (2 * h), rtol=1e-6)


def test_map_grammar():
    assert parse_map("sqrt").key == "sqrt"
    assert not parse_map("inv").increasing
