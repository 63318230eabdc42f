import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import series
from fracrot.fracops import FracSeries, frac_dx, frac_dy
from fracrot.invariants import (
    DEFAULT_GRID,
    InvariantKind,
    first_order_variation,
    invariance_residual,
    unweighted_laplacian,
    weighted_gradient_scalar,
    weighted_laplacian,
)
from fracrot.poly import Point2D, from_taylor, partial_x, partial_y, random_series
from fracrot.specialfn import gamma_pos

G25 = 1.5 * 0.5 * math.sqrt(math.pi)
INTERIOR = [i / 10 for i in range(1, 10)]


def test_weighted_gradient_examples(phi):
    got = weighted_gradient_scalar(phi, 0.5).exponents()
    assert got == {(2, 0): pytest.approx(2 / G25, rel=1e-14), (0, 2): pytest.approx(2 / G25, rel=1e-14)}
    assert weighted_gradient_scalar(phi, 1).exponents() == {(2, 0): 2.0, (0, 2): 2.0}
    assert len(weighted_gradient_scalar(from_taylor([(0, 0, 3.0)]), 0.4)) == 0


@pytest.mark.parametrize("nu", INTERIOR)
def test_quadratic_field_quantities_are_multiples_of_phi(phi, nu):
    k1 = 2 / gamma_pos(3 - nu)
    k2 = 2 / gamma_pos(3 - 2 * nu)
    assert weighted_gradient_scalar(phi, nu).exponents() == {
        (2, 0): pytest.approx(k1, rel=1e-14),
        (0, 2): pytest.approx(k1, rel=1e-14),
    }
    assert weighted_laplacian(phi, nu).exponents() == {
        (2, 0): pytest.approx(k2, rel=1e-13),
        (0, 2): pytest.approx(k2, rel=1e-13),
    }


def test_weighted_laplacian_examples(phi):
    assert weighted_laplacian(phi, 0.5).exponents() == {(2, 0): pytest.approx(2.0), (0, 2): pytest.approx(2.0)}
    # with weights x**2, y**2 the nu = 1 value is 2 x**2 + 2 y**2, not the plain Laplacian
    assert weighted_laplacian(phi, 1).exponents() == {(2, 0): 2.0, (0, 2): 2.0}


def test_unweighted_laplacian_examples(phi):
    got = unweighted_laplacian(phi, 0.5).exponents()
    assert got == {(1, 0): pytest.approx(2.0, rel=1e-14), (0, 1): pytest.approx(2.0, rel=1e-14)}
    assert unweighted_laplacian(phi, 1).exponents() == {(0, 0): 4.0}
    assert len(unweighted_laplacian(from_taylor([(0, 0, 1.0)]), 0.3)) == 0
    mixed = unweighted_laplacian(phi, 0.3)
    assert len(mixed.blocks) == 2


def _close(a, b, rel=1e-14):
    ea, eb = a.exponents(), b.exponents()
    assert ea.keys() == eb.keys()
    for k in ea:
        assert ea[k] == pytest.approx(eb[k], rel=rel)


@given(series(max_degree=7))
def test_nu_one_reduces_to_classical(s):
    gx = FracSeries.from_poly(partial_x(s)).shift(1, 0) + FracSeries.from_poly(partial_y(s)).shift(0, 1)
    assert weighted_gradient_scalar(s, 1) == gx
    lap = FracSeries.from_poly(partial_x(partial_x(s))) + FracSeries.from_poly(partial_y(partial_y(s)))
    _close(unweighted_laplacian(s, 1), lap)
    wl = FracSeries.from_poly(partial_x(partial_x(s))).shift(2, 0) + FracSeries.from_poly(
        partial_y(partial_y(s))
    ).shift(0, 2)
    _close(weighted_laplacian(s, 1), wl)


@pytest.mark.parametrize("kind", ["weighted_gradient", "weighted_laplacian"])
@pytest.mark.parametrize("nu", INTERIOR + [1.0])
def test_weighted_quantities_invariant_on_quadratic_field(phi, kind, nu):
    for dt in (1e-2, 5e-3):
        r = invariance_residual(kind, phi, nu, dt)
        assert r.max_abs_residual <= 1e-12 * r.scale


def test_unweighted_first_order_term_matches_hand_algebra(phi):
    # Q = k (x**e + y**e), e = 2 - 2 nu; variation e k (x**(e-1) y - x y**(e-1))
    for nu in INTERIOR:
        dt = 1e-2
        k = 2 / gamma_pos(3 - 2 * nu)
        e = 2 - 2 * nu
        r = invariance_residual("unweighted_laplacian", phi, nu, dt)
        for p, v in r.residuals.items():
            hand = dt * e * k * (p.x ** (e - 1) * p.y - p.x * p.y ** (e - 1))
            assert v == pytest.approx(hand, rel=1e-12, abs=1e-15)


def test_unweighted_vanishes_on_diagonal(phi):
    # first-order residual is odd under x <-> y, so (1, 1) cannot witness non-invariance
    r = invariance_residual("unweighted_laplacian", phi, 0.5, 1e-2, [Point2D(1.0, 1.0)])
    assert r.max_abs_residual <= 1e-15
    r = invariance_residual("unweighted_laplacian", phi, 0.5, 1e-2, [Point2D(1.0, 2.0)])
    assert r.max_abs_residual / 1e-2 == pytest.approx(2.0, rel=1e-13)


@pytest.mark.parametrize("nu", INTERIOR)
def test_unweighted_residual_is_linear_in_dtheta(phi, nu):
    a = invariance_residual("unweighted_laplacian", phi, nu, 1e-2).max_abs_residual / 1e-2
    b = invariance_residual("unweighted_laplacian", phi, nu, 5e-3).max_abs_residual / 5e-3
    assert a > 0.1
    assert 0.9 <= b / a <= 1.1


def test_residual_rejects_points_off_quadrant(phi):
    with pytest.raises(ValueError):
        invariance_residual("weighted_gradient", phi, 0.5, 1e-2, [Point2D(0.0, 1.0)])
    with pytest.raises(ValueError):
        invariance_residual("weighted_gradient", phi, 0.5, 1e-2, [Point2D(1.0, -1.0)])


def test_general_series_residual_is_reported():
    s = random_series(5, np.random.default_rng(4))
    for kind in InvariantKind:
        r = invariance_residual(kind, s, 0.4, 1e-2)
        assert len(r.residuals) == len(DEFAULT_GRID)
        assert np.isfinite(r.max_abs_residual)


def test_variation_of_rotation_symmetric_field_is_zero(phi):
    for kind in InvariantKind:
        if kind is InvariantKind.unweighted_laplacian:
            continue
        assert len(first_order_variation(kind, phi, 0.35)) == 0


def test_weighted_gradient_not_invariant_for_general_fields():
    s = random_series(5, np.random.default_rng(4))
    for nu in (0.3, 0.5, 0.7):
        assert invariance_residual(InvariantKind.weighted_gradient, s, nu, 1e-2).relative > 1e-4
    # nu = 1 gives the Euler operator x d/dx + y d/dy, which commutes with rotations
    assert invariance_residual(InvariantKind.weighted_gradient, s, 1.0, 1e-2).relative < 1e-14
