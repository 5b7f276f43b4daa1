import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chronon.specfun import (
    PRECISION_ENV,
    SWITCH_RADIUS,
    ei_asymptotic,
    ei_imag,
    ei_imag_array,
    ei_imag_value,
    ei_series,
    gamma_pos,
    working_digits,
)
from oracles import ei_quadrature_reference, ei_series_reference

SERIES_GRID = np.concatenate([np.geomspace(0.1, 30, 40), [1.0, 2.5, 10.0, 29.9]])


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / abs(b)


def test_value_at_one():
    v = ei_imag(1.0)
    assert v.real == pytest.approx(0.337404, abs=5e-7)
    assert v.imag == pytest.approx(2.516879, abs=5e-7)


@pytest.mark.parametrize("x", SERIES_GRID)
def test_series_range_matches_50_digit_oracle(x):
    assert _rel(ei_imag(x), ei_series_reference(x)) <= 1e-12


@pytest.mark.parametrize("x", np.geomspace(30.5, 1e3, 25))
def test_asymptotic_range_matches_reference(x):
    assert ei_imag_value(x).method == "asymptotic"
    assert _rel(ei_imag(x), ei_series_reference(x)) <= 1e-10


@pytest.mark.parametrize("x", np.geomspace(0.1, 1e3, 50))
def test_quadrature_oracle(x):
    assert abs(ei_imag(x) - ei_quadrature_reference(x)) <= 1e-9


@pytest.mark.parametrize("x", np.linspace(SWITCH_RADIUS - 5, SWITCH_RADIUS + 5, 21))
def test_method_crossover(x):
    assert abs(ei_series(x) - ei_asymptotic(x)) <= 1e-9


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.01, max_value=1e4, allow_nan=False))
def test_schwarz_reflection(x):
    a, b = ei_imag(-x), ei_imag(x).conjugate()
    assert abs(a - b) <= 1e-13 * max(1.0, abs(b))


def test_large_argument_limit():
    assert abs(ei_imag(100.0) - 1j * math.pi) < 0.011
    assert abs(ei_imag(-100.0) + 1j * math.pi) < 0.011


def test_domain_errors():
    for bad in (0.0, float("inf"), float("nan")):
        with pytest.raises(ValueError):
            ei_imag(bad)


def test_array_helper_preserves_shape():
    xs = np.array([[1.0, -2.0], [40.0, 0.5]])
    out = ei_imag_array(xs)
    assert out.shape == xs.shape
    assert out[1, 0] == ei_imag(40.0)


def test_precision_override(monkeypatch):
    monkeypatch.setenv(PRECISION_ENV, "60")
    assert working_digits(5.0) == 60
    assert _rel(ei_imag(12.0), ei_series_reference(12.0)) <= 1e-14
    monkeypatch.setenv(PRECISION_ENV, "8")
    with pytest.raises(ValueError):
        working_digits(5.0)


def test_low_precision_series_loses_accuracy():
    # 20 digits cannot absorb the e^30 cancellation; the default schedule does
    assert _rel(ei_series(30.0, digits=15), ei_series_reference(30.0)) > 1e-10
    assert _rel(ei_series(30.0), ei_series_reference(30.0)) <= 1e-14


@pytest.mark.parametrize(
    "s,expected",
    [(Fraction(1, 2), math.sqrt(math.pi)), (1, 1.0), (Fraction(3, 2), math.sqrt(math.pi) / 2), (Fraction(5, 4), 0.9064024770554771)],
)
def test_gamma_values(s, expected):
    assert float(gamma_pos(s)) == pytest.approx(expected, rel=1e-15)


def test_gamma_recurrence_and_float_input():
    with mpmath.workdps(50):
        for k in range(1, 12):
            s = Fraction(k, 4)
            assert abs(gamma_pos(s + 1) - gamma_pos(s) * mpmath.mpf(k) / 4) < mpmath.mpf(10) ** -45
    assert float(gamma_pos(2.5)) == pytest.approx(1.329340388179137, rel=1e-15)


def test_gamma_domain():
    for bad in (0, Fraction(-1, 2), -3.0):
        with pytest.raises(ValueError):
            gamma_pos(bad)
