import math
from decimal import Decimal

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mobius_quad import _series
from mobius_quad.quadrature import TransformedIntegrand, integrate
from mobius_quad.weights import (
    LN2, ZETA, custom, gaussian, logistic, reference_abs_power_integral,
)

from conftest import adaptive_weighted_integral, scalar_gaussian, scalar_logistic


def test_gaussian_spot_values():
    assert gaussian(1.0)(0.0) == pytest.approx(0.3989422804, abs=1e-10)
    assert gaussian(2.0)(0.0) == pytest.approx(0.1994711402, abs=1e-10)
    assert gaussian(1.0)(0.0) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15)


def test_logistic_spot_values():
    w = logistic(1.0)
    assert w(0.0) == 0.25
    assert w(5.0) == w(-5.0)
    with np.errstate(all="raise"):
        v = float(w(700.0))
    assert 0 < v < 1e-300


def test_gaussian_tails_decrease():
    x = np.linspace(0.1, 30, 500)
    assert np.all(np.diff(gaussian()(x)) <= 0)
    assert np.all(np.diff(logistic()(x)) <= 0)


@pytest.mark.parametrize("factory", [gaussian, logistic])
@pytest.mark.parametrize("param", [0.0, -1.0, float("nan")])
def test_scale_must_be_positive(factory, param):
    with pytest.raises(ValueError):
        factory(param)


@given(x=st.floats(-50, 50), s=st.sampled_from([0.5, 1.0, 3.0]))
def test_symmetric(x, s):
    for w in (gaussian(s), logistic(s)):
        assert w(x) == pytest.approx(w(-x), rel=1e-14)
        assert w(x) >= 0


def test_builtins_match_scalar_formulas():
    x = np.linspace(-20, 20, 101)
    np.testing.assert_allclose(gaussian()(x), [scalar_gaussian(v) for v in x], rtol=1e-14)
    np.testing.assert_allclose(logistic()(x), [scalar_logistic(v) for v in x], rtol=1e-14)


def test_custom_weight_is_accepted():
    w = custom(lambda x: 0.5 * np.exp(-np.abs(x)), monotonicity_threshold=0.0)
    assert w.kind == "custom"
    assert w(0.0) == 0.5
    assert w.monotonicity_threshold == 0.0


# Closed forms, checked first against the adaptive oracle.

@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
@pytest.mark.parametrize("kind, rho", [("gaussian", scalar_gaussian), ("logistic", scalar_logistic)])
def test_reference_matches_adaptive_oracle(kind, rho, p):
    expected = adaptive_weighted_integral(lambda x: abs(x) ** p, rho)
    assert reference_abs_power_integral(kind, p) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("kind, p, expected", [
    ("gaussian", 1, 0.7978845608),
    ("gaussian", 3, 1.5957691216),
    ("logistic", 1, 1.3862943611),
    ("logistic", 3, 10.8185121284),
    ("logistic", 5, 233.3087449073),
])
def test_reference_spot_values(kind, p, expected):
    assert reference_abs_power_integral(kind, p) == pytest.approx(expected, abs=1e-9)


def test_reference_identities():
    assert reference_abs_power_integral("logistic", 3) == pytest.approx(9 * ZETA[3], rel=1e-15)
    assert reference_abs_power_integral("logistic", 5) == pytest.approx(225 * ZETA[5], rel=1e-15)
    assert reference_abs_power_integral("logistic", 1) == pytest.approx(2 * LN2, rel=1e-15)
    assert reference_abs_power_integral(gaussian(1.0), 1) == pytest.approx(math.sqrt(2 / math.pi), rel=1e-15)


@pytest.mark.parametrize("kind, p", [("gaussian", 0), ("gaussian", 13), ("logistic", 2.5), ("cauchy", 1)])
def test_reference_rejects(kind, p):
    with pytest.raises(ValueError):
        reference_abs_power_integral(kind, p)


def test_reference_rejects_scaled_weight():
    with pytest.raises(ValueError):
        reference_abs_power_integral(gaussian(2.0), 1)


def test_embedded_constants_match_series():
    table = _series.table(12, digits=25)
    assert float(table["ln2"]) == LN2
    for s in range(2, 13):
        assert float(table[s]) == ZETA[s]
    assert abs(table[2] - Decimal(math.pi) ** 2 / 6) < Decimal("1e-15")


@pytest.mark.parametrize("w", [gaussian(), logistic()], ids=["gaussian", "logistic"])
def test_normalization_converges_to_one(w):
    ti = TransformedIntegrand(lambda x: np.ones_like(x), w)
    errs = [abs(integrate(ti, n) - 1) for n in (32, 64, 128, 256)]
    assert errs[-1] < 1e-12
    assert errs[-1] < errs[0]
