"""Relative residual of the transport-term law, with and without the edge term, per order.

    python scripts/law_sweep.py --series 50 --max-degree 10
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from fracrot.fracops import FracOrder
from fracrot.poly import random_series
from fracrot.rotation import verify_transformation


@dataclass(frozen=True)
class SweepConfig:
    series: int = 50
    max_degree: int = 10
    seed: int = 20240601
    dtheta: float = 1e-2
    orders: tuple[float, ...] = tuple(i / 10 for i in range(11))


def run(cfg: SweepConfig, out) -> None:
    rng = np.random.default_rng(cfg.seed)
    corpus = [random_series(int(rng.integers(1, cfg.max_degree + 1)), rng) for _ in range(cfg.series)]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["nu", "axis", "transport_worst", "transport_median", "corrected_worst"])
    for nu in cfg.orders:
        order = FracOrder(nu)
        for axis in ("x", "y"):
            transport = [verify_transformation(s, order, cfg.dtheta, axis).relative for s in corpus]
            fixed = [verify_transformation(s, order, cfg.dtheta, axis, law="corrected").relative for s in corpus]
            w.writerow([nu, axis, f"{max(transport):.3e}", f"{np.median(transport):.3e}", f"{max(fixed):.3e}"])


def main() -> None:
    d = SweepConfig()
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--series", type=int, default=d.series)
    p.add_argument("--max-degree", type=int, default=d.max_degree)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--dtheta", type=float, default=d.dtheta)
    a = p.parse_args()
    run(SweepConfig(a.series, a.max_degree, a.seed, a.dtheta), sys.stdout)


if __name__ == "__main__":
    main()
