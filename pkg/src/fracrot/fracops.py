"""Caputo fractional partial derivatives of truncated series.

Results are :class:`FracSeries`: sums of terms ``c x**(n + ox) y**(m + oy)``
on integer lattices carrying exact rational offsets. Offsets are
normalized into (-1, 0], so an exponent is > -1 exactly when its lattice
index is non-negative, and two equal series have identical storage.

``caputo_quadrature`` is an independent route through the integral
definition, used to check the termwise power rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Mapping

import numpy as np

from .poly import Point2D, PolySeries, integrate_x, integrate_y, lattice_key, partial_x, partial_y
from .specialfn import caputo_power_coeff, gamma_pos

__all__ = [
    "FracOrder",
    "FracSeries",
    "QuadratureConfig",
    "as_order",
    "frac_dx",
    "frac_dy",
    "frac_dx_general",
    "frac_dy_general",
    "transport_term",
    "transport_term_y",
    "caputo_quadrature",
    "eval_frac",
]

Offsets = tuple[Fraction, Fraction]
Block = dict[tuple[int, int], float]


@dataclass(frozen=True)
class FracOrder:
    """Order of a Caputo derivative, 0 <= nu <= 1.

    ``exact`` is the rational used for exponent bookkeeping; a float order is
    read through its shortest repr, so ``0.1`` means exactly 1/10.
    """

    nu: float

    def __post_init__(self):
        nu = float(self.nu)
        if not math.isfinite(nu) or not 0.0 <= nu <= 1.0:
            raise ValueError(f"fractional order must lie in [0, 1], got {self.nu!r}")

    @property
    def exact(self) -> Fraction:
        if isinstance(self.nu, Fraction):
            return self.nu
        return Fraction(repr(float(self.nu)))

    @property
    def value(self) -> float:
        return float(self.nu)

    @property
    def is_identity(self) -> bool:
        return self.nu == 0

    @property
    def is_classical(self) -> bool:
        return self.nu == 1


def as_order(nu) -> FracOrder:
    return nu if isinstance(nu, FracOrder) else FracOrder(nu)


def _split(e: Fraction) -> tuple[int, Fraction]:
    n = math.ceil(e)
    return n, e - n


class FracSeries:
    """Sum of power terms with real exponents > -1.

    ``blocks`` maps an offset pair ``(ox, oy)`` to a coefficient dict keyed by
    lattice index ``(n, m)``. Offsets are renormalized on construction and
    zero coefficients are dropped.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks: Mapping[Offsets, Mapping[tuple[int, int], float]] | None = None):
        norm: dict[Offsets, Block] = {}
        for (ox, oy), coeffs in (blocks or {}).items():
            sx, ox = _split(Fraction(ox))
            sy, oy = _split(Fraction(oy))
            target = norm.setdefault((ox, oy), {})
            for (n, m), c in coeffs.items():
                if c == 0.0:
                    continue
                nn, mm = n + sx, m + sy
                if nn < 0 or mm < 0:
                    raise ValueError(
                        f"exponent ({n + sx + ox}, {m + sy + oy}) is not > -1"
                    )
                target[(nn, mm)] = target.get((nn, mm), 0.0) + c
        self.blocks = {k: v for k, v in norm.items() if v}

    @classmethod
    def single(cls, offset_x, offset_y, coeffs: Mapping[tuple[int, int], float]) -> FracSeries:
        return cls({(Fraction(offset_x), Fraction(offset_y)): dict(coeffs)})

    @classmethod
    def from_poly(cls, s: PolySeries) -> FracSeries:
        return cls({(Fraction(0), Fraction(0)): s.monomials()})

    @classmethod
    def from_terms(cls, terms) -> FracSeries:
        """Build from ``(exponent_x, exponent_y, c)`` triples."""
        blocks: dict[Offsets, Block] = {}
        for ex, ey, c in terms:
            n, ox = _split(Fraction(ex))
            m, oy = _split(Fraction(ey))
            b = blocks.setdefault((ox, oy), {})
            b[(n, m)] = b.get((n, m), 0.0) + c
        return cls(blocks)

    def _only_block(self) -> tuple[Offsets, Block]:
        if not self.blocks:
            return (Fraction(0), Fraction(0)), {}
        if len(self.blocks) > 1:
            raise ValueError("series mixes several exponent offsets")
        return next(iter(self.blocks.items()))

    @property
    def offset_x(self) -> Fraction:
        return self._only_block()[0][0]

    @property
    def offset_y(self) -> Fraction:
        return self._only_block()[0][1]

    @property
    def coeffs(self) -> Block:
        return self._only_block()[1]

    def terms(self) -> Iterator[tuple[int, int, Fraction, Fraction, float]]:
        """``(n, m, ox, oy, c)`` in canonical order."""
        for ox, oy in sorted(self.blocks):
            block = self.blocks[(ox, oy)]
            for n, m in sorted(block, key=lattice_key):
                yield n, m, ox, oy, block[(n, m)]

    def exponents(self) -> dict[tuple[Fraction, Fraction], float]:
        return {(n + ox, m + oy): c for n, m, ox, oy, c in self.terms()}

    def __len__(self) -> int:
        return sum(len(b) for b in self.blocks.values())

    def max_abs(self) -> float:
        return max((abs(c) for b in self.blocks.values() for c in b.values()), default=0.0)

    def to_poly(self) -> PolySeries:
        if any(k != (0, 0) for k in self.blocks):
            raise ValueError("only offset-free series convert to PolySeries")
        items = [(n, m, c * math.factorial(n) * math.factorial(m)) for n, m, _, _, c in self.terms()]
        degree = max((n + m for n, m, _ in items), default=0)
        return PolySeries(degree, {(n, m): a for n, m, a in items})

    def shift(self, dx, dy=0) -> FracSeries:
        """Multiply by ``x**dx * y**dy``."""
        dx, dy = Fraction(dx), Fraction(dy)
        return FracSeries({(ox + dx, oy + dy): b for (ox, oy), b in self.blocks.items()})

    def __add__(self, other: FracSeries) -> FracSeries:
        if not isinstance(other, FracSeries):
            return NotImplemented
        blocks = {k: dict(b) for k, b in self.blocks.items()}
        for k, b in other.blocks.items():
            target = blocks.setdefault(k, {})
            for nm, c in b.items():
                target[nm] = target.get(nm, 0.0) + c
        return FracSeries(blocks)

    def __mul__(self, k: float) -> FracSeries:
        k = float(k)
        return FracSeries({o: {nm: k * c for nm, c in b.items()} for o, b in self.blocks.items()})

    __rmul__ = __mul__

    def __neg__(self) -> FracSeries:
        return self * -1.0

    def __sub__(self, other: FracSeries) -> FracSeries:
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self.blocks == other.blocks

    def __repr__(self) -> str:
        parts = [
            f"{c:+.10g}*x^{float(n + ox):g}*y^{float(m + oy):g}" for n, m, ox, oy, c in self.terms()
        ]
        return "FracSeries(" + (" ".join(parts) or "0") + ")"


def eval_frac(s: FracSeries, p: Point2D):
    """Evaluate at ``p``. Fractional exponents need ``x > 0`` (resp. ``y > 0``)."""
    x, y = p
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    total = 0.0 * xa * ya
    for (ox, oy), block in s.blocks.items():
        if ox != 0 and not np.all(xa > 0):
            raise ValueError(f"fractional x-exponent requires x > 0, got x={x}")
        if oy != 0 and not np.all(ya > 0):
            raise ValueError(f"fractional y-exponent requires y > 0, got y={y}")
        fx, fy = float(ox), float(oy)
        for (n, m), c in block.items():
            total = total + c * np.power(xa, n + fx) * np.power(ya, m + fy)
    if np.ndim(total) == 0:
        return float(total)
    return total


@lru_cache(maxsize=None)
def _shifted_gamma(n: int, nu: float) -> float:
    return gamma_pos(n - nu + 1.0)


def _frac_d(s: PolySeries, nu, axis: str) -> FracSeries:
    order = as_order(nu)
    if order.is_identity:
        return FracSeries.from_poly(s)
    if order.is_classical:
        return FracSeries.from_poly(partial_x(s) if axis == "x" else partial_y(s))
    v = order.value
    coeffs: Block = {}
    for (n, m), a in s.coeffs.items():
        if axis == "x":
            if n == 0:
                continue
            coeffs[(n, m)] = a / (_shifted_gamma(n, v) * math.factorial(m))
        else:
            if m == 0:
                continue
            coeffs[(n, m)] = a / (_shifted_gamma(m, v) * math.factorial(n))
    off = -order.exact
    if axis == "x":
        return FracSeries.single(off, 0, coeffs)
    return FracSeries.single(0, off, coeffs)


def frac_dx(s: PolySeries, nu) -> FracSeries:
    """Caputo derivative in x (lower terminal 0) of a Taylor series, termwise.

    Terms constant in x vanish for nu > 0; nu = 0 is the identity and
    nu = 1 the classical partial derivative.
    """
    return _frac_d(s, nu, "x")


def frac_dy(s: PolySeries, nu) -> FracSeries:
    return _frac_d(s, nu, "y")


def _frac_d_general(s: FracSeries, nu, axis: str) -> FracSeries:
    order = as_order(nu)
    if order.is_identity:
        return s
    v = order.value
    out: dict[Offsets, Block] = {}
    for (ox, oy), block in s.blocks.items():
        off = ox if axis == "x" else oy
        foff = float(off)
        new: Block = {}
        for (n, m), c in block.items():
            k = n if axis == "x" else m
            if k == 0 and off == 0:
                continue
            if k == 0:
                raise ValueError(
                    f"Caputo power rule undefined for exponent {float(off)} in (-1, 0)"
                )
            new[(n, m)] = c * caputo_power_coeff(k + foff, v)
        key = (ox - order.exact, oy) if axis == "x" else (ox, oy - order.exact)
        out[key] = new
    return FracSeries(out)


def frac_dx_general(s: FracSeries, nu) -> FracSeries:
    """Power rule applied to real exponents: x**p -> k(p, nu) x**(p - nu).

    Exponents must be exactly 0 (annihilated) or positive.
    """
    return _frac_d_general(s, nu, "x")


def frac_dy_general(s: FracSeries, nu) -> FracSeries:
    return _frac_d_general(s, nu, "y")


def transport_term(s: PolySeries, nu) -> FracSeries:
    """D^nu_x I_x D_y applied to ``s``."""
    return frac_dx(integrate_x(partial_y(s)), nu)


def transport_term_y(s: PolySeries, nu) -> FracSeries:
    """D^nu_y I_y D_x applied to ``s``."""
    return frac_dy(integrate_y(partial_x(s)), nu)


# -- quadrature oracle -------------------------------------------------------


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Legendre settings for :func:`caputo_quadrature`.

    ``grading`` is the power q in w = W v**q; None picks 3 for alpha < 1/2
    and 1 otherwise.
    """

    node_count: int = 64
    sub_intervals: int = 1
    grading: int | None = None

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError("node_count must be >= 2")
        if self.sub_intervals < 1:
            raise ValueError("sub_intervals must be >= 1")
        if self.grading is not None and self.grading < 1:
            raise ValueError("grading must be >= 1")


@lru_cache(maxsize=16)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def caputo_quadrature(
    fprime: Callable[[np.ndarray], np.ndarray],
    alpha,
    x: float,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> float:
    """Caputo derivative of order alpha in (0, 1) at ``x`` from its integral form.

    ``fprime`` is the first derivative of the function and must accept numpy
    arrays. The kernel singularity is removed with w = (x - u)**(1 - alpha),
    which leaves

        (1 / Gamma(1-alpha)) * (1/(1-alpha)) * int_0^{x**(1-alpha)} f'(x - w**(1/(1-alpha))) dw

    and the w-interval is additionally graded toward 0 when the transformed
    integrand is only finitely smooth there.
    """
    a = float(alpha.nu if isinstance(alpha, FracOrder) else alpha)
    if not 0.0 < a < 1.0:
        raise ValueError(f"quadrature oracle needs 0 < alpha < 1, got {a}")
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"quadrature oracle needs x > 0, got {x}")
    q = cfg.grading if cfg.grading is not None else (3 if a < 0.5 else 1)
    beta = 1.0 / (1.0 - a)
    upper = x ** (1.0 - a)

    t, w = _legendre(cfg.node_count)
    edges = np.linspace(0.0, 1.0, cfg.sub_intervals + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        v = lo + half * (t + 1.0)
        wv = w * half
        ww = upper * v**q
        jac = upper * q * v ** (q - 1) * wv
        total += float(np.sum(np.asarray(fprime(x - ww**beta), dtype=float) * jac))
    return total / ((1.0 - a) * gamma_pos(1.0 - a))
