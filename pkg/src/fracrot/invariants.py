"""Scalar candidates built from fractional partials, and their rotation residual.

The power weights x**nu, y**nu are coordinates too: in the rotated frame
they become x'**nu, y'**nu and are expanded along with everything else.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .fracops import FracSeries, as_order, eval_frac, frac_dx, frac_dx_general, frac_dy, frac_dy_general
from .poly import Point2D, PolySeries
from .rotation import ComparisonReport, rotation_generator, substitution_generator

__all__ = [
    "InvariantKind",
    "DEFAULT_GRID",
    "weighted_gradient_scalar",
    "weighted_laplacian",
    "unweighted_laplacian",
    "build_quantity",
    "first_order_variation",
    "invariance_residual",
]


class InvariantKind(str, Enum):
    weighted_gradient = "weighted_gradient"
    weighted_laplacian = "weighted_laplacian"
    unweighted_laplacian = "unweighted_laplacian"


DEFAULT_GRID = tuple(Point2D(x, y) for x in (0.5, 1.0, 2.0) for y in (0.5, 1.0, 2.0))


def weighted_gradient_scalar(s: PolySeries, nu) -> FracSeries:
    """x**nu D^nu_x Phi + y**nu D^nu_y Phi."""
    order = as_order(nu)
    w = order.exact
    return frac_dx(s, order).shift(w, 0) + frac_dy(s, order).shift(0, w)


def _second(s: PolySeries, order) -> tuple[FracSeries, FracSeries]:
    dxx = frac_dx_general(frac_dx(s, order), order)
    dyy = frac_dy_general(frac_dy(s, order), order)
    return dxx, dyy


def weighted_laplacian(s: PolySeries, nu) -> FracSeries:
    """x**(2 nu) D^nu_x D^nu_x Phi + y**(2 nu) D^nu_y D^nu_y Phi."""
    order = as_order(nu)
    dxx, dyy = _second(s, order)
    w = 2 * order.exact
    return dxx.shift(w, 0) + dyy.shift(0, w)


def unweighted_laplacian(s: PolySeries, nu) -> FracSeries:
    """D^nu_x D^nu_x Phi + D^nu_y D^nu_y Phi (mixed offsets when 2 nu is not an integer)."""
    dxx, dyy = _second(s, as_order(nu))
    return dxx + dyy


_BUILDERS: dict[InvariantKind, Callable[[PolySeries, object], FracSeries]] = {
    InvariantKind.weighted_gradient: weighted_gradient_scalar,
    InvariantKind.weighted_laplacian: weighted_laplacian,
    InvariantKind.unweighted_laplacian: unweighted_laplacian,
}


def build_quantity(kind, s: PolySeries, nu) -> FracSeries:
    return _BUILDERS[InvariantKind(kind)](s, nu)


def first_order_variation(kind, s: PolySeries, nu) -> FracSeries:
    """d/d(dtheta) of Q'(x', y') expressed at (x, y), at dtheta = 0.

    Q is linear in the Taylor coefficients, so the rotated-coefficient
    contribution is Q applied to the coefficient tangent.
    """
    build = _BUILDERS[InvariantKind(kind)]
    q = build(s, nu)
    return build(rotation_generator(s), nu) + substitution_generator(q)


def invariance_residual(
    kind,
    s: PolySeries,
    nu,
    dt: float,
    grid: Sequence[Point2D] = DEFAULT_GRID,
) -> ComparisonReport:
    """Pointwise Q'(x', y') - Q(x, y) over ``grid``, first order in ``dt``.

    Residuals are keyed by grid point; ``scale`` is max |Q| over the grid.
    """
    pts = [Point2D(float(p[0]), float(p[1])) for p in grid]
    for p in pts:
        if not (math.isfinite(p.x) and math.isfinite(p.y) and p.x > 0 and p.y > 0):
            raise ValueError(f"grid point {p} is outside the open positive quadrant")
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    q = build_quantity(kind, s, nu)
    delta = float(dt) * np.atleast_1d(eval_frac(first_order_variation(kind, s, nu), Point2D(xs, ys)))
    base = np.atleast_1d(eval_frac(q, Point2D(xs, ys)))
    residuals = {p: float(d) for p, d in zip(pts, delta)}
    return ComparisonReport(
        max_abs_residual=float(np.max(np.abs(delta))) if len(pts) else 0.0,
        residuals=residuals,
        lhs_terms=len(q),
        rhs_terms=len(q),
        scale=float(np.max(np.abs(base))) if len(pts) else 0.0,
    )
