"""Gamma function on the positive reals and the Caputo power-rule coefficient."""

from __future__ import annotations

import math

__all__ = ["gamma_pos", "caputo_power_coeff"]

# Lanczos approximation, g = 7, nine terms.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma_pos(x: float) -> float:
    """Gamma function for finite ``x > 0``.

    Poles and negative arguments are rejected instead of reflected.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"gamma_pos requires a finite positive argument, got {x!r}")
    if x < 0.5:
        # Upward recurrence keeps the Lanczos sum in its accurate range.
        return gamma_pos(x + 1.0) / x
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (z + 0.5) * math.exp(-t) * acc


def caputo_power_coeff(p: float, alpha: float) -> float:
    """Coefficient k in D^alpha x^p = k x^(p - alpha).

    ``alpha == 0`` is the identity (k = 1) and ``alpha == 1`` the classical
    derivative (k = p). Inside (0, 1) this is Gamma(p+1) / Gamma(p-alpha+1),
    and constants (``p == 0``) are annihilated.

    >>> caputo_power_coeff(2.0, 1.0)
    2.0
    """
    p = float(p)
    alpha = float(alpha)
    if not math.isfinite(p) or p < 0.0:
        raise ValueError(f"power must be >= 0, got {p!r}")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"order must lie in [0, 1], got {alpha!r}")
    if alpha == 0.0:
        return 1.0
    if alpha == 1.0:
        return p
    if p == 0.0:
        return 0.0
    return gamma_pos(p + 1.0) / gamma_pos(p - alpha + 1.0)
