"""Truncated bivariate Taylor series.

A field is stored by its Taylor coefficients ``a[n, m]`` (the mixed partial
of order ``(n, m)`` at the origin), so that

    Phi(x, y) = sum a[n, m] x**n y**m / (n! m!)

Monomial coefficients ``c[n, m] = a[n, m] / (n! m!)`` are a derived view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, TextIO

import numpy as np

__all__ = [
    "Point2D",
    "PolySeries",
    "from_taylor",
    "from_monomials",
    "eval_poly",
    "partial_x",
    "partial_y",
    "integrate_x",
    "integrate_y",
    "read_coeff_file",
    "parse_coeffs",
    "write_coeff_file",
    "random_series",
]


class Point2D(NamedTuple):
    x: float
    y: float


def lattice_key(nm: tuple[int, int]) -> tuple[int, int]:
    """Canonical order: total degree ascending, then n ascending."""
    n, m = nm
    return (n + m, n)


def monomial_factor(n: int, m: int) -> int:
    return math.factorial(n) * math.factorial(m)


@dataclass(frozen=True, eq=False)
class PolySeries:
    max_total_degree: int
    coeffs: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        if self.max_total_degree < 0:
            raise ValueError("max_total_degree must be non-negative")
        for n, m in self.coeffs:
            if n < 0 or m < 0:
                raise ValueError(f"negative index ({n}, {m})")
            if n + m > self.max_total_degree:
                raise ValueError(
                    f"index ({n}, {m}) exceeds max_total_degree {self.max_total_degree}"
                )

    def __eq__(self, other) -> bool:
        # stored zeros and absent indices are the same coefficient
        if not isinstance(other, PolySeries):
            return NotImplemented
        nz = lambda s: {k: v for k, v in s.coeffs.items() if v != 0.0}
        return self.max_total_degree == other.max_total_degree and nz(self) == nz(other)

    def __getitem__(self, nm: tuple[int, int]) -> float:
        return self.coeffs.get(nm, 0.0)

    def items(self):
        """(index, a) pairs in canonical lattice order."""
        return sorted(self.coeffs.items(), key=lambda kv: lattice_key(kv[0]))

    def monomials(self) -> dict[tuple[int, int], float]:
        return {(n, m): a / monomial_factor(n, m) for (n, m), a in self.items()}

    def __add__(self, other: PolySeries) -> PolySeries:
        if not isinstance(other, PolySeries):
            return NotImplemented
        out = dict(self.coeffs)
        for nm, a in other.coeffs.items():
            out[nm] = out.get(nm, 0.0) + a
        return PolySeries(max(self.max_total_degree, other.max_total_degree), out)

    def __mul__(self, k: float) -> PolySeries:
        return PolySeries(self.max_total_degree, {nm: k * a for nm, a in self.coeffs.items()})

    __rmul__ = __mul__

    def __neg__(self) -> PolySeries:
        return self * -1.0

    def __sub__(self, other: PolySeries) -> PolySeries:
        return self + (-other)

    def __call__(self, x, y):
        return eval_poly(self, Point2D(x, y))


def _build(terms: Iterable[tuple[int, int, float]], convert) -> PolySeries:
    coeffs: dict[tuple[int, int], float] = {}
    for n, m, v in terms:
        n, m = int(n), int(m)
        if n < 0 or m < 0:
            raise ValueError(f"negative index ({n}, {m})")
        if (n, m) in coeffs:
            raise ValueError(f"duplicate index ({n}, {m})")
        coeffs[(n, m)] = convert(n, m, float(v))
    degree = max((n + m for n, m in coeffs), default=0)
    return PolySeries(degree, coeffs)


def from_taylor(coeff_list: Iterable[tuple[int, int, float]]) -> PolySeries:
    """Build a series from ``(n, m, a)`` Taylor-coefficient triples."""
    return _build(coeff_list, lambda n, m, a: a)


def from_monomials(coeff_list: Iterable[tuple[int, int, float]]) -> PolySeries:
    """Build a series from ``(n, m, c)`` triples meaning ``c x**n y**m``."""
    return _build(coeff_list, lambda n, m, c: c * monomial_factor(n, m))


def eval_poly(s: PolySeries, p: Point2D):
    """Evaluate the series at ``p``; components may be numpy arrays."""
    x, y = p
    total = 0.0 * np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    for (n, m), c in s.monomials().items():
        total = total + c * np.power(x, n) * np.power(y, m)
    if np.ndim(total) == 0:
        return float(total)
    return total


def partial_x(s: PolySeries) -> PolySeries:
    coeffs = {(n - 1, m): a for (n, m), a in s.coeffs.items() if n >= 1}
    return PolySeries(max(s.max_total_degree - 1, 0), coeffs)


def partial_y(s: PolySeries) -> PolySeries:
    coeffs = {(n, m - 1): a for (n, m), a in s.coeffs.items() if m >= 1}
    return PolySeries(max(s.max_total_degree - 1, 0), coeffs)


def integrate_x(s: PolySeries) -> PolySeries:
    """Antiderivative in x with zero lower terminal."""
    coeffs = {(n + 1, m): a for (n, m), a in s.coeffs.items()}
    return PolySeries(s.max_total_degree + 1, coeffs)


def integrate_y(s: PolySeries) -> PolySeries:
    coeffs = {(n, m + 1): a for (n, m), a in s.coeffs.items()}
    return PolySeries(s.max_total_degree + 1, coeffs)


# -- coefficient files -------------------------------------------------------


def parse_coeffs(lines: Iterable[str], mode: str = "taylor") -> PolySeries:
    """Parse ``n m a`` lines; blank lines and ``#`` comments are skipped.

    Malformed lines raise ``ValueError`` naming the 1-based line number.
    """
    if mode not in ("taylor", "monomial"):
        raise ValueError(f"unknown coefficient mode {mode!r}")
    terms = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'n m a', got {text!r}")
        try:
            n, m, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {text!r}") from None
        if n < 0 or m < 0:
            raise ValueError(f"line {lineno}: negative index ({n}, {m})")
        if not math.isfinite(v):
            raise ValueError(f"line {lineno}: non-finite coefficient")
        if (n, m) in seen:
            raise ValueError(
                f"line {lineno}: duplicate index ({n}, {m}), first seen on line {seen[(n, m)]}"
            )
        seen[(n, m)] = lineno
        terms.append((n, m, v))
    return from_taylor(terms) if mode == "taylor" else from_monomials(terms)


def read_coeff_file(path: str | Path, mode: str = "taylor") -> PolySeries:
    with open(path, encoding="utf-8") as fh:
        return parse_coeffs(fh, mode)


def write_coeff_file(s: PolySeries, out: TextIO) -> None:
    """Write Taylor coefficients in round-trip-safe form."""
    out.write(f"# taylor coefficients a[n,m], max_total_degree={s.max_total_degree}\n")
    for (n, m), a in s.items():
        out.write(f"{n} {m} {a!r}\n")


def random_series(degree: int, rng: np.random.Generator, dense: bool = True) -> PolySeries:
    """Series with Taylor coefficients drawn uniformly from [-1, 1].

    With ``dense=False`` each coefficient is dropped with probability 1/2.
    """
    terms = []
    for total in range(degree + 1):
        for n in range(total, -1, -1):
            a = float(rng.uniform(-1.0, 1.0))
            if dense or rng.random() < 0.5:
                terms.append((n, total - n, a))
    s = from_taylor(terms)
    return PolySeries(degree, dict(s.coeffs))
