"""Caputo fractional partial derivatives of bivariate Taylor series and
their behaviour under infinitesimal rotations of the plane."""

from .fracops import (
    FracOrder,
    FracSeries,
    QuadratureConfig,
    caputo_quadrature,
    eval_frac,
    frac_dx,
    frac_dx_general,
    frac_dy,
    frac_dy_general,
    transport_term,
    transport_term_y,
)
from .invariants import (
    InvariantKind,
    invariance_residual,
    unweighted_laplacian,
    weighted_gradient_scalar,
    weighted_laplacian,
)
from .poly import (
    Point2D,
    PolySeries,
    eval_poly,
    from_monomials,
    from_taylor,
    integrate_x,
    integrate_y,
    partial_x,
    partial_y,
)
from .rotation import (
    ComparisonReport,
    edge_term,
    lhs_transformed,
    rhs_transformation_law,
    rhs_transformation_law_y,
    rotate_coeffs_exact,
    rotate_coeffs_first_order,
    substitute_rotated_first_order,
    verify_transformation,
)
from .specialfn import caputo_power_coeff, gamma_pos

__version__ = "0.1.0"
