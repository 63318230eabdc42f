"""Command-line front end. Every command writes CSV (header row, LF endings).

    fracrot deriv --coeffs phi.txt --nu 0.3,0.5
    fracrot verify --random-degree 8 --seed 0
    fracrot invariant --nu 0.5 --dtheta 1e-2,5e-3
    fracrot oracle --coeffs phi.txt --nu 0.5 --grid 1:1,2:0.5
    fracrot example
    fracrot dump --random-degree 6 --seed 3 --out phi.txt

Without ``--coeffs`` or ``--random-degree`` the field is x**2 + y**2.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .fracops import FracOrder, caputo_quadrature, eval_frac, frac_dx, frac_dy, transport_term, transport_term_y
from .invariants import DEFAULT_GRID, InvariantKind, invariance_residual
from .poly import Point2D, PolySeries, eval_poly, from_taylor, partial_x, random_series, read_coeff_file, write_coeff_file
from .rotation import exact_rotation_residual, lhs_tangent, verify_transformation
from .specialfn import gamma_pos

__all__ = ["main", "build_parser"]

VERIFY_TOL = 1e-10
ORACLE_TOL = 1e-8
DEFAULT_DTHETA = (1e-2, 5e-3, 2.5e-3)
TENTHS = tuple(i / 10 for i in range(11))


def fmt(v) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    return format(v + 0.0, ".17g")


def quadratic_example() -> PolySeries:
    return from_taylor([(2, 0, 2.0), (0, 2, 2.0)])


# -- argument parsing --------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _grid(text: str) -> list[Point2D]:
    pts = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            x, y = item.split(":")
            pts.append(Point2D(float(x), float(y)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"grid points must look like x:y, got {item!r}") from None
    return pts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("series source")
    src.add_argument("--coeffs", metavar="PATH", help="coefficient file of 'n m a' lines")
    src.add_argument("--mode", choices=("taylor", "monomial"), default="taylor")
    src.add_argument("--random-degree", type=int, metavar="N", help="use a seeded random series of total degree N")
    src.add_argument("--seed", type=int, default=0)
    common.add_argument("--nu", type=_float_list, metavar="LIST")
    common.add_argument("--dtheta", type=_float_list, metavar="LIST")
    common.add_argument("--grid", type=_grid, metavar="LIST", help="points as x:y,x:y,...")
    common.add_argument("--axis", choices=("x", "y", "both"), default="both")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="fracrot", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("deriv", parents=[common], help="fractional derivative terms")
    v = sub.add_parser("verify", parents=[common], help="transformation-law sweep")
    v.add_argument(
        "--law",
        choices=("transport", "corrected"),
        default="transport",
        help="compare against the transport-term law, or that law plus the edge term",
    )
    sub.add_parser("invariant", parents=[common], help="scalar-candidate residuals")
    sub.add_parser("oracle", parents=[common], help="series vs quadrature cross-check")
    sub.add_parser("example", parents=[common], help="x**2 + y**2 worked example")
    sub.add_parser("dump", parents=[common], help="write the series as a coefficient file")
    return parser


def load_series(args) -> PolySeries:
    if args.coeffs:
        return read_coeff_file(args.coeffs, args.mode)
    if args.random_degree is not None:
        if args.random_degree < 0:
            raise ValueError("--random-degree must be non-negative")
        return random_series(args.random_degree, np.random.default_rng(args.seed))
    return quadratic_example()


def _axes(args) -> tuple[str, ...]:
    return ("x", "y") if args.axis == "both" else (args.axis,)


def _orders(values: Sequence[float]) -> list[FracOrder]:
    return [FracOrder(v) for v in values]


@contextmanager
def _output(path: str | None) -> Iterator:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


# -- commands ----------------------------------------------------------------


def cmd_deriv(args, out) -> int:
    s = load_series(args)
    w = _writer(out)
    w.writerow(["nu", "axis", "n", "m", "exponent_x", "exponent_y", "coefficient"])
    for order in _orders(args.nu or [0.5]):
        for axis in _axes(args):
            f = frac_dx(s, order) if axis == "x" else frac_dy(s, order)
            for n, m, ox, oy, c in f.terms():
                w.writerow([fmt(order.nu), axis, n, m, fmt(n + ox), fmt(m + oy), fmt(c)])
    return 0


def cmd_verify(args, out) -> int:
    s = load_series(args)
    grid = args.grid or list(DEFAULT_GRID)
    reference = "law" if args.law == "transport" else "corrected"
    w = _writer(out)
    w.writerow(["nu", "dtheta", "axis", "max_abs_residual", "exact_rotation_residual", "order_ratio"])
    failed = False
    for order in _orders(args.nu or TENTHS):
        for axis in _axes(args):
            prev = None
            for dt in args.dtheta or DEFAULT_DTHETA:
                report = verify_transformation(s, order, dt, axis, law=args.law)
                failed |= report.relative > VERIFY_TOL
                r = exact_rotation_residual(s, order, dt, axis, grid, reference=reference)
                ratio = r / prev if prev else float("nan")
                prev = r
                w.writerow([fmt(order.nu), fmt(dt), axis, fmt(report.max_abs_residual), fmt(r), fmt(ratio)])
    return 1 if failed else 0


def cmd_invariant(args, out) -> int:
    s = load_series(args)
    grid = args.grid or list(DEFAULT_GRID)
    w = _writer(out)
    w.writerow(["kind", "nu", "dtheta", "point_x", "point_y", "residual"])
    for kind in InvariantKind:
        for order in _orders(args.nu or TENTHS[1:10]):
            for dt in args.dtheta or DEFAULT_DTHETA[:2]:
                report = invariance_residual(kind, s, order, dt, grid)
                for p, r in report.residuals.items():
                    w.writerow([kind.value, fmt(order.nu), fmt(dt), fmt(p.x), fmt(p.y), fmt(abs(r))])
    return 0


def cmd_oracle(args, out) -> int:
    s = load_series(args)
    grid = args.grid or list(DEFAULT_GRID)
    dphi = partial_x(s)
    w = _writer(out)
    w.writerow(["nu", "x", "y", "series_value", "quadrature_value", "abs_diff"])
    failed = False
    for order in _orders(args.nu or [0.5]):
        series = frac_dx(s, order)
        for p in grid:
            sv = eval_frac(series, p)
            qv = caputo_quadrature(lambda u, y=p.y: eval_poly(dphi, Point2D(u, y)), order, p.x)
            diff = abs(sv - qv)
            failed |= diff > ORACLE_TOL * (1.0 + abs(sv))
            w.writerow([fmt(order.nu), fmt(p.x), fmt(p.y), fmt(sv), fmt(qv), fmt(diff)])
    return 1 if failed else 0


def cmd_example(args, out) -> int:
    s = quadratic_example()
    dt = (args.dtheta or [1e-2])[0]
    w = _writer(out)
    w.writerow(
        [
            "nu",
            "correction_coeff",
            "lhs_x_coeff",
            "law_x_coeff",
            "lhs_y_coeff",
            "law_y_coeff",
            "weighted_gradient_residual",
            "weighted_laplacian_residual",
            "unweighted_laplacian_residual_per_dtheta",
        ]
    )
    for order in _orders(args.nu or TENTHS):
        e = 1 - order.exact
        key_x = (e, Fraction(1))
        key_y = (Fraction(1), e)
        lx = lhs_tangent(s, order, "x").exponents().get(key_x, 0.0)
        ly = lhs_tangent(s, order, "y").exponents().get(key_y, 0.0)
        tx = order.value * transport_term(s, order).exponents().get(key_x, 0.0)
        ty = -order.value * transport_term_y(s, order).exponents().get(key_y, 0.0)
        res = {
            kind: invariance_residual(kind, s, order, dt).max_abs_residual for kind in InvariantKind
        }
        w.writerow(
            [
                fmt(order.nu),
                fmt(2.0 / gamma_pos(2.0 - order.value)),
                fmt(lx),
                fmt(tx),
                fmt(ly),
                fmt(ty),
                fmt(res[InvariantKind.weighted_gradient]),
                fmt(res[InvariantKind.weighted_laplacian]),
                fmt(res[InvariantKind.unweighted_laplacian] / dt),
            ]
        )
    return 0


def cmd_dump(args, out) -> int:
    write_coeff_file(load_series(args), out)
    return 0


COMMANDS = {
    "deriv": cmd_deriv,
    "verify": cmd_verify,
    "invariant": cmd_invariant,
    "oracle": cmd_oracle,
    "example": cmd_example,
    "dump": cmd_dump,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with _output(args.out) as out:
            return COMMANDS[args.command](args, out)
    except (OSError, ValueError) as exc:
        print(f"fracrot {args.command}: error: {exc}", file=sys.stderr)
        return 2
