"""Rotations of series and the first-order transformation law of D^nu.

Convention: the rotated frame is x' = x + dtheta y, y' = y - dtheta x, and a
scalar field satisfies Phi'(x', y') = Phi(x, y). The finite rotation that
linearizes to this is x' = x cos t + y sin t, y' = -x sin t + y cos t.

Every first-order construction here is built as ``zeroth + dtheta * first``
with the tangent part computed separately, so no O(dtheta**2) content leaks
into a comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fracops import (
    FracSeries,
    as_order,
    eval_frac,
    frac_dx,
    frac_dy,
    transport_term,
    transport_term_y,
)
from .poly import Point2D, PolySeries, from_taylor
from .specialfn import gamma_pos

__all__ = [
    "ComparisonReport",
    "compare_series",
    "rotation_generator",
    "rotate_coeffs_first_order",
    "rotate_coeffs_exact",
    "rotate_point",
    "substitution_generator",
    "substitute_rotated_first_order",
    "lhs_transformed",
    "lhs_tangent",
    "rhs_transformation_law",
    "rhs_transformation_law_y",
    "edge_term",
    "transformed_law",
    "verify_transformation",
    "exact_transformed_derivative",
    "exact_rotation_residual",
]


@dataclass
class ComparisonReport:
    max_abs_residual: float
    residuals: dict = field(default_factory=dict)
    lhs_terms: int = 0
    rhs_terms: int = 0
    scale: float = 0.0

    @property
    def relative(self) -> float:
        """Max residual over ``scale`` (plain max residual when scale is 0)."""
        return self.max_abs_residual / self.scale if self.scale > 0 else self.max_abs_residual


def compare_series(lhs: FracSeries, rhs: FracSeries) -> ComparisonReport:
    """Coefficientwise ``lhs - rhs`` keyed by exponent pair."""
    le, re = lhs.exponents(), rhs.exponents()
    residuals = {k: le.get(k, 0.0) - re.get(k, 0.0) for k in sorted(set(le) | set(re))}
    return ComparisonReport(
        max_abs_residual=max((abs(r) for r in residuals.values()), default=0.0),
        residuals=residuals,
        lhs_terms=len(le),
        rhs_terms=len(re),
        scale=max(lhs.max_abs(), rhs.max_abs()),
    )


# -- coefficient rotations ---------------------------------------------------


def rotation_generator(s: PolySeries) -> PolySeries:
    """Tangent of the coefficient map: n a[n-1, m+1] - m a[n+1, m-1]."""
    out: dict[tuple[int, int], float] = {}
    for (i, j), a in s.coeffs.items():
        if j >= 1:
            out[(i + 1, j - 1)] = out.get((i + 1, j - 1), 0.0) + (i + 1) * a
        if i >= 1:
            out[(i - 1, j + 1)] = out.get((i - 1, j + 1), 0.0) - (j + 1) * a
    return PolySeries(s.max_total_degree, out)


def rotate_coeffs_first_order(s: PolySeries, dt: float) -> PolySeries:
    """Taylor coefficients of Phi' to first order in ``dt``."""
    rotated = s + float(dt) * rotation_generator(s)
    return PolySeries(s.max_total_degree, dict(rotated.coeffs))


def rotate_coeffs_exact(s: PolySeries, theta: float) -> PolySeries:
    """Taylor coefficients of Phi'(X, Y) = Phi(X cos t - Y sin t, X sin t + Y cos t)."""
    if theta == 0.0:
        return s
    c, sn = math.cos(theta), math.sin(theta)
    mono: dict[tuple[int, int], float] = {}
    for (n, m), coef in s.monomials().items():
        # (X c - Y s)^n (X s + Y c)^m
        for i in range(n + 1):
            ki = math.comb(n, i) * c ** (n - i) * (-sn) ** i
            for j in range(m + 1):
                kj = math.comb(m, j) * sn ** (m - j) * c**j
                key = (n - i + m - j, i + j)
                mono[key] = mono.get(key, 0.0) + coef * ki * kj
    taylor = {(n, m): v * math.factorial(n) * math.factorial(m) for (n, m), v in mono.items()}
    return PolySeries(s.max_total_degree, taylor)


def rotate_point(p: Point2D, theta: float) -> Point2D:
    """Primed coordinates of the unprimed point ``p``."""
    c, sn = math.cos(theta), math.sin(theta)
    x, y = p
    return Point2D(c * x + sn * y, -sn * x + c * y)


# -- coordinate substitution -------------------------------------------------


def substitution_generator(f: FracSeries) -> FracSeries:
    """Tangent of x^p y^q -> (x + dt y)^p (y - dt x)^q at dt = 0."""
    out: dict = {}
    for (ox, oy), block in f.blocks.items():
        fx, fy = float(ox), float(oy)
        new: dict[tuple[int, int], float] = {}
        for (n, m), c in block.items():
            p, q = n + fx, m + fy
            if p != 0.0:
                if n == 0:
                    raise ValueError(f"substitution produces x-exponent {p - 1} <= -1")
                new[(n - 1, m + 1)] = new.get((n - 1, m + 1), 0.0) + p * c
            if q != 0.0:
                if m == 0:
                    raise ValueError(f"substitution produces y-exponent {q - 1} <= -1")
                new[(n + 1, m - 1)] = new.get((n + 1, m - 1), 0.0) - q * c
        out[(ox, oy)] = new
    return FracSeries(out)


def substitute_rotated_first_order(f: FracSeries, dt: float) -> FracSeries:
    """Rewrite a series in primed variables in terms of x, y, to first order."""
    return f + float(dt) * substitution_generator(f)


# -- the transformation law --------------------------------------------------


def _frac(axis: str):
    if axis == "x":
        return frac_dx
    if axis == "y":
        return frac_dy
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def lhs_transformed(s: PolySeries, nu, dt: float, axis: str = "x") -> FracSeries:
    """D^nu_{x'} Phi'(x', y') written in unprimed coordinates, first order in dt.

    Equals substitute(frac_d(rotate_first_order(s))) with the dt**2 cross
    term dropped.
    """
    return _frac(axis)(s, nu) + float(dt) * lhs_tangent(s, nu, axis)


def lhs_tangent(s: PolySeries, nu, axis: str = "x") -> FracSeries:
    """Coefficient of dt in :func:`lhs_transformed`."""
    d = _frac(axis)
    return d(rotation_generator(s), nu) + substitution_generator(d(s, nu))


def rhs_transformation_law(s: PolySeries, nu, dt: float) -> FracSeries:
    """D^nu_x Phi + nu dt D^nu_x I_x D_y Phi."""
    order = as_order(nu)
    return frac_dx(s, order) + (order.value * float(dt)) * transport_term(s, order)


def rhs_transformation_law_y(s: PolySeries, nu, dt: float) -> FracSeries:
    """D^nu_y Phi - nu dt D^nu_y I_y D_x Phi."""
    order = as_order(nu)
    return frac_dy(s, order) - (order.value * float(dt)) * transport_term_y(s, order)


def _law(s, nu, dt, axis):
    if axis == "x":
        return rhs_transformation_law(s, nu, dt)
    if axis == "y":
        return rhs_transformation_law_y(s, nu, dt)
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def edge_term(s: PolySeries, nu, axis: str = "x") -> FracSeries:
    """First-order content missing from the transport-term law.

    For 0 < nu < 1 the transformed derivative is
    ``law + dt * edge_term``, with (x axis)

        edge = [x**(1-nu) dPhi/dy(0, y) + x**(-nu) y dPhi/dx(0, y)] / Gamma(1-nu)

    and the mirror image with a minus sign for the y axis. It comes from the
    lattice edge n in {0, 1}, where the index shift that produces the
    transport term has no partner term. Zero at nu = 0 and nu = 1.
    """
    order = as_order(nu)
    if order.is_identity or order.is_classical:
        return FracSeries()
    g = gamma_pos(1.0 - order.value)
    coeffs: dict[tuple[int, int], float] = {}
    for (n, m), a in s.coeffs.items():
        if axis == "x":
            if n == 0 and m >= 1:
                coeffs[(1, m - 1)] = coeffs.get((1, m - 1), 0.0) + a / (math.factorial(m - 1) * g)
            elif n == 1:
                coeffs[(0, m + 1)] = coeffs.get((0, m + 1), 0.0) + a / (math.factorial(m) * g)
        elif axis == "y":
            if m == 0 and n >= 1:
                coeffs[(n - 1, 1)] = coeffs.get((n - 1, 1), 0.0) - a / (math.factorial(n - 1) * g)
            elif m == 1:
                coeffs[(n + 1, 0)] = coeffs.get((n + 1, 0), 0.0) - a / (math.factorial(n) * g)
        else:
            raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    off = -order.exact
    if axis == "x":
        return FracSeries.single(off, 0, coeffs)
    return FracSeries.single(0, off, coeffs)


def transformed_law(s: PolySeries, nu, dt: float, axis: str = "x", law: str = "transport") -> FracSeries:
    """Right-hand side to compare against: ``transport`` or ``corrected`` (with edge term)."""
    rhs = _law(s, nu, dt, axis)
    if law == "transport":
        return rhs
    if law == "corrected":
        return rhs + float(dt) * edge_term(s, nu, axis)
    raise ValueError(f"law must be 'transport' or 'corrected', got {law!r}")


def verify_transformation(
    s: PolySeries, nu, dt: float, axis: str = "x", law: str = "transport"
) -> ComparisonReport:
    """Coefficientwise residual between the transformed derivative and the law."""
    return compare_series(lhs_transformed(s, nu, dt, axis), transformed_law(s, nu, dt, axis, law))


# -- finite-angle reference --------------------------------------------------


def exact_transformed_derivative(
    s: PolySeries,
    nu,
    theta: float,
    axis: str,
    points: Sequence[Point2D],
    rotated: PolySeries | None = None,
):
    """D^nu_{x'} Phi' evaluated at the rotated images of ``points``, no truncation.

    ``rotated`` may carry a precomputed ``rotate_coeffs_exact(s, theta)``.
    """
    if rotated is None:
        rotated = rotate_coeffs_exact(s, theta)
    primed = _frac(axis)(rotated, nu)
    xs = np.array([p[0] for p in points], dtype=float)
    ys = np.array([p[1] for p in points], dtype=float)
    c, sn = math.cos(theta), math.sin(theta)
    return eval_frac(primed, Point2D(c * xs + sn * ys, -sn * xs + c * ys))


def exact_rotation_residual(
    s: PolySeries,
    nu,
    theta: float,
    axis: str,
    grid: Sequence[Point2D],
    reference: str = "law",
    rotated: PolySeries | None = None,
) -> float:
    """Max pointwise gap between the finite-angle derivative and a first-order model.

    ``reference`` is ``law`` (the transport-term law), ``corrected`` (law plus
    edge term) or ``lhs`` (the directly truncated transformed derivative).
    """
    if reference == "lhs":
        model = lhs_transformed(s, nu, theta, axis)
    elif reference in ("law", "corrected"):
        model = transformed_law(s, nu, theta, axis, "transport" if reference == "law" else "corrected")
    else:
        raise ValueError(f"unknown reference {reference!r}")
    xs = np.array([p[0] for p in grid], dtype=float)
    ys = np.array([p[1] for p in grid], dtype=float)
    exact = exact_transformed_derivative(s, nu, theta, axis, grid, rotated)
    approx = eval_frac(model, Point2D(xs, ys))
    return float(np.max(np.abs(np.asarray(exact) - np.asarray(approx))))


def _check_sign_convention() -> None:
    # Phi = x must come back as x' - dt y' to first order.
    dt = 0.125
    rotated = rotate_coeffs_first_order(from_taylor([(1, 0, 1.0)]), dt)
    if rotated[(1, 0)] != 1.0 or rotated[(0, 1)] != -dt:
        raise AssertionError("rotation sign convention broken")


_check_sign_convention()
