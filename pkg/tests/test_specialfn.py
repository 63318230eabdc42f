import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracrot.specialfn import caputo_power_coeff, gamma_pos


@pytest.mark.parametrize(
    "x, expected",
    [
        (1.0, 1.0),
        (0.5, math.sqrt(math.pi)),
        (2.5, 1.5 * 0.5 * math.sqrt(math.pi)),
    ],
)
def test_gamma_examples(x, expected):
    assert gamma_pos(x) == pytest.approx(expected, rel=1e-14)


def test_gamma_2_5_value():
    assert gamma_pos(2.5) == pytest.approx(1.3293403881791370, rel=1e-15)


@given(st.floats(0.1, 50.0))
def test_gamma_against_mpmath(x):
    ref = float(mpmath.gamma(mpmath.mpf(x)))
    assert abs(gamma_pos(x) - ref) <= 1e-12 * ref


@given(st.floats(0.1, 49.0))
def test_gamma_recurrence(x):
    g1 = gamma_pos(x + 1.0)
    assert abs(g1 - x * gamma_pos(x)) <= 1e-12 * g1


@pytest.mark.parametrize("n", range(1, 16))
def test_factorial_pins(n):
    assert gamma_pos(n + 1.0) == pytest.approx(math.factorial(n), rel=1e-13)


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, math.inf, math.nan])
def test_gamma_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        gamma_pos(bad)


def test_power_coeff_examples():
    assert caputo_power_coeff(0.0, 0.5) == 0.0
    assert caputo_power_coeff(2.0, 1.0) == 2.0
    assert caputo_power_coeff(2.0, 0.5) == pytest.approx(2.0 / gamma_pos(2.5), rel=1e-15)
    assert caputo_power_coeff(2.0, 0.5) == pytest.approx(1.5045055561273502, rel=1e-14)


def test_power_coeff_endpoints():
    assert caputo_power_coeff(3.7, 0.0) == 1.0
    assert caputo_power_coeff(0.0, 0.0) == 1.0
    assert caputo_power_coeff(0.0, 1.0) == 0.0
    for p in range(1, 11):
        assert caputo_power_coeff(float(p), 1.0) == p


def test_power_coeff_rejects_negative_power():
    with pytest.raises(ValueError):
        caputo_power_coeff(-0.5, 0.5)
    with pytest.raises(ValueError):
        caputo_power_coeff(1.0, 1.5)


@given(st.floats(0.0, 10.0), st.floats(0.01, 0.99))
def test_power_coeff_composition_telescopes(p, alpha):
    if p < alpha or p - alpha == 0.0:
        return
    lhs = caputo_power_coeff(p, alpha) * caputo_power_coeff(p - alpha, alpha)
    rhs = gamma_pos(p + 1.0) / gamma_pos(p - 2 * alpha + 1.0)
    assert lhs == pytest.approx(rhs, rel=1e-11)


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.3, 7.0])
def test_power_coeff_continuous_at_one(p):
    assert caputo_power_coeff(p, 1 - 1e-6) == pytest.approx(p, rel=1e-4)


def test_power_coeff_matches_mpmath():
    for p in np.linspace(0.25, 9.5, 12):
        for a in (0.1, 0.35, 0.5, 0.85):
            ref = mpmath.gamma(p + 1) / mpmath.gamma(p - a + 1)
            assert caputo_power_coeff(p, a) == pytest.approx(float(ref), rel=1e-13)
