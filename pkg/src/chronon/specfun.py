"""Exponential integral on the imaginary axis and Gamma for moment integrals.

``Ei(iy)`` uses the principal branch fixed by the series

    Ei(z) = gamma + Log z + sum_{n>=1} z**n / (n n!),   Log(iy) = ln|y| + i pi/2 sign(y)

summed with an mpmath accumulator for ``|y| <= 30`` (the alternating terms grow
like ``e**|y|`` before they shrink), and the asymptotic expansion
``i pi sign(y) + e**(iy)/(iy) * sum n!/(iy)**n`` beyond that.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

SWITCH_RADIUS = 30.0
PRECISION_ENV = "CHRONON_PRECISION"


@dataclass(frozen=True)
class EiValue:
    x: float
    value: complex
    method: str  # "series" | "asymptotic"


def working_digits(x: float) -> int:
    """Decimal digits for the series accumulator at argument ``x``.

    Overridden by the ``CHRONON_PRECISION`` environment variable.
    """
    override = os.environ.get(PRECISION_ENV)
    if override:
        digits = int(override)
        if digits < 15:
            raise ValueError(f"{PRECISION_ENV} must be at least 15 digits")
        return digits
    # largest series term is about e**|x|; keep 20 digits beyond it
    return 25 + int(abs(x) / math.log(10))


def ei_series(x: float, digits: int | None = None) -> complex:
    if x == 0:
        raise ValueError("Ei(ix) is singular at x = 0")
    digits = working_digits(x) if digits is None else digits
    with mpmath.workdps(digits):
        y = mpmath.mpf(x)
        eps = mpmath.mpf(10) ** (-digits)
        re = +mpmath.euler + mpmath.log(abs(y))
        im = mpmath.pi / 2 * (1 if x > 0 else -1)
        power = mpmath.mpf(1)  # y**n / n!
        n = 0
        while True:
            n += 1
            power = power * y / n
            term = power / n
            # i**n cycles through 1, i, -1, -i
            r = n % 4
            if r == 1:
                im += term
            elif r == 2:
                re -= term
            elif r == 3:
                im -= term
            else:
                re += term
            if n > abs(y) and abs(term) < eps:
                break
        return complex(float(re), float(im))


def ei_asymptotic(x: float) -> complex:
    if x == 0:
        raise ValueError("Ei(ix) is singular at x = 0")
    y = abs(x)
    z = 1j * y
    total = 0j
    term = 1 + 0j
    best = abs(term)
    n = 0
    while True:
        total += term
        n += 1
        nxt = term * n / z
        if abs(nxt) >= best or abs(nxt) < 1e-18:
            break
        best = abs(nxt)
        term = nxt
    value = 1j * math.pi + (complex(math.cos(y), math.sin(y)) / z) * total
    return value if x > 0 else value.conjugate()


def ei_imag_value(x: float) -> EiValue:
    x = float(x)
    if x == 0 or not math.isfinite(x):
        raise ValueError("ei_imag requires a finite nonzero argument")
    if abs(x) <= SWITCH_RADIUS:
        return EiValue(x, ei_series(x), "series")
    return EiValue(x, ei_asymptotic(x), "asymptotic")


def ei_imag(x: float) -> complex:
    """``Ei(i x)`` on the principal branch for real ``x != 0``."""
    return ei_imag_value(x).value


def ei_imag_array(xs):
    return np.array([ei_imag(float(v)) for v in np.ravel(xs)], dtype=complex).reshape(np.shape(xs))


@lru_cache(maxsize=None)
def _gamma_cached(num: int, den: int, prec: int) -> mpmath.mpf:
    with mpmath.workdps(prec):
        return mpmath.gamma(mpmath.mpf(num) / den)


def gamma_pos(s, prec: int = 50) -> mpmath.mpf:
    """Gamma(s) for ``s > 0``; rational arguments are cached exactly."""
    if isinstance(s, (int, Fraction)):
        s = Fraction(s)
        if s <= 0:
            raise ValueError("gamma_pos requires s > 0")
        return _gamma_cached(s.numerator, s.denominator, prec)
    if not s > 0:
        raise ValueError("gamma_pos requires s > 0")
    with mpmath.workdps(prec):
        return mpmath.gamma(mpmath.mpf(s))
