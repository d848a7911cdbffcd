import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mobius_quad.errors import DomainError
from mobius_quad.mobius import MobiusMap, make_grid, forward, inverse, forward_derivative, inverse_derivative


@pytest.mark.parametrize("c, theta, expected", [
    (1.0, math.pi, 0.0),
    (1.0, math.pi / 2, -1.0),
    (2.0, 3 * math.pi / 2, 2.0),
])
def test_forward_spot_values(c, theta, expected):
    assert MobiusMap(c).forward(theta) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("theta", [0.0, 2 * math.pi, -0.1, 7.0, np.nan])
def test_forward_rejects_boundary(theta):
    with pytest.raises(DomainError):
        MobiusMap().forward(theta)
    with pytest.raises(DomainError):
        MobiusMap().derivative(theta)


def test_inverse_spot_values():
    m = MobiusMap(1.0)
    assert m.inverse(0.0) == math.pi
    assert m.inverse(-1.0) == pytest.approx(math.pi / 2, rel=1e-15)
    t = m.inverse(1e6)
    assert math.pi < t < 2 * math.pi
    assert abs(m.forward(t) - 1e6) <= 1e-9 * 1e6


@pytest.mark.parametrize("c, theta, expected", [
    (1.0, math.pi, 0.5),
    (2.0, math.pi, 1.0),
    (1.0, math.pi / 3, 2.0),
])
def test_forward_derivative(c, theta, expected):
    assert MobiusMap(c).derivative(theta) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("c, x, expected", [(1.0, 0.0, 2.0), (1.0, 1.0, 1.0), (3.0, 4.0, 6 / 25)])
def test_inverse_derivative(c, x, expected):
    assert MobiusMap(c).inverse_derivative(x) == pytest.approx(expected, rel=1e-15)


def test_module_level_aliases():
    m = MobiusMap(2.0)
    assert forward(m, 1.0) == m.forward(1.0)
    assert inverse(m, 1.0) == m.inverse(1.0)
    assert forward_derivative(m, 1.0) == m.derivative(1.0)
    assert inverse_derivative(m, 1.0) == m.inverse_derivative(1.0)


@pytest.mark.parametrize("c", [0.0, -1.0, np.inf, np.nan])
def test_scale_must_be_positive(c):
    with pytest.raises(ValueError):
        MobiusMap(c)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
def test_round_trip_log_uniform(c):
    rng = np.random.default_rng(3)
    mag = 10.0 ** rng.uniform(-6, 6, size=4000)
    x = np.concatenate([mag, -mag, [0.0, 1e6, -1e6]])
    m = MobiusMap(c)
    back = m.forward(m.inverse(x))
    assert np.all(np.abs(back - x) <= 1e-9 * (1 + np.abs(x)))


@settings(max_examples=300, deadline=None)
@given(theta=st.floats(1e-3, 2 * math.pi - 1e-3), c=st.sampled_from([0.5, 1.0, 2.0]))
def test_derivative_reciprocity(theta, c):
    m = MobiusMap(c)
    product = m.derivative(theta) * m.inverse_derivative(m.forward(theta))
    assert product == pytest.approx(1.0, rel=1e-12)


def test_forward_strictly_increasing():
    theta = np.linspace(1e-6, 2 * math.pi - 1e-6, 100001)
    assert np.all(np.diff(MobiusMap(1.3).forward(theta)) > 0)


def test_inverse_in_open_interval_and_increasing():
    x = np.linspace(-1e4, 1e4, 20001)
    t = MobiusMap().inverse(x)
    assert np.all((t > 0) & (t < 2 * math.pi))
    assert np.all(np.diff(t) > 0)


def test_central_difference_is_second_order():
    m = MobiusMap(1.0)
    errs = []
    for h in (1e-3, 1e-4):
        fd = (m.forward(math.pi + h) - m.forward(math.pi - h)) / (2 * h)
        errs.append(abs(fd - m.derivative(math.pi)))
    # truncation error c*h^2/24 * phi''' scaling: ratio ~ 100
    assert 80 < errs[0] / errs[1] < 120


@pytest.mark.parametrize("n, shift, expected", [
    (4, 0.0, [0, math.pi / 2, math.pi, 3 * math.pi / 2]),
    (2, math.pi / 2, [math.pi / 2, 3 * math.pi / 2]),
    (1, 0.0, [0.0]),
])
def test_make_grid(n, shift, expected):
    g = make_grid(n, shift)
    np.testing.assert_allclose(g.angles, expected, rtol=0, atol=1e-15)
    assert g.has_endpoint == (shift == 0.0)


def test_grid_invariants():
    for n in (1, 3, 8, 17, 1024):
        for shift in (0.0, 0.5 * 2 * math.pi / n):
            a = make_grid(n, shift).angles
            assert np.all(np.diff(a) > 0)
            assert a[0] >= 0 and a[-1] < 2 * math.pi
    assert make_grid(8).angles[0] == 0.0


@pytest.mark.parametrize("n, shift", [(4, -0.1), (4, math.pi / 2), (4, 10.0), (0, 0.0), (2.5, 0.0)])
def test_make_grid_rejects(n, shift):
    with pytest.raises(ValueError):
        make_grid(n, shift)


def test_grid_nesting_is_bitwise():
    coarse = make_grid(64).angles
    fine = make_grid(128).angles
    assert np.array_equal(fine[::2], coarse)
