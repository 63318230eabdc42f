"""Show the edge term on small fields, checked against quadrature at a finite angle.

For each field the first-order coefficient of the transformed x-derivative is
split into the transport-term part and the edge part, and the finite-angle
derivative is estimated by quadrature on the rotated field.

    python scripts/edge_term_demo.py --nu 0.5
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from fracrot.fracops import FracOrder, QuadratureConfig, caputo_quadrature, eval_frac
from fracrot.poly import Point2D, eval_poly, from_monomials, partial_x
from fracrot.rotation import edge_term, lhs_transformed, rotate_coeffs_exact, rotate_point, transformed_law

FIELDS = {
    "x*y": [(1, 1, 1.0)],
    "x**2+y**2": [(2, 0, 1.0), (0, 2, 1.0)],
    "y**2": [(0, 2, 1.0)],
    "x**3*y": [(3, 1, 1.0)],
}


@dataclass(frozen=True)
class DemoConfig:
    nu: float = 0.5
    theta: float = 1e-3
    point: Point2D = Point2D(1.0, 0.7)
    quadrature: QuadratureConfig = QuadratureConfig(node_count=96)


def run(cfg: DemoConfig) -> None:
    order = FracOrder(cfg.nu)
    p = cfg.point
    xp = rotate_point(p, cfg.theta)
    print(f"nu={cfg.nu} theta={cfg.theta} point={tuple(p)}")
    print(f"{'field':>10} {'quadrature':>14} {'truncated':>14} {'law':>14} {'law+edge':>14} {'edge':>12}")
    for name, mono in FIELDS.items():
        s = from_monomials(mono)
        d = partial_x(rotate_coeffs_exact(s, cfg.theta))
        quad = caputo_quadrature(lambda u: eval_poly(d, Point2D(u, xp.y)), order, xp.x, cfg.quadrature)
        trunc = eval_frac(lhs_transformed(s, order, cfg.theta), p)
        law = eval_frac(transformed_law(s, order, cfg.theta), p)
        fixed = eval_frac(transformed_law(s, order, cfg.theta, law="corrected"), p)
        edge = cfg.theta * eval_frac(edge_term(s, order), p)
        print(f"{name:>10} {quad:14.10f} {trunc:14.10f} {law:14.10f} {fixed:14.10f} {edge:12.3e}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--nu", type=float, default=DemoConfig.nu)
    p.add_argument("--theta", type=float, default=DemoConfig.theta)
    a = p.parse_args()
    run(DemoConfig(a.nu, a.theta))


if __name__ == "__main__":
    main()
