"""
Tests for Hankel ratios and the Dirichlet-to-Neumann symbols.
"""

import numpy as np
import pytest
from scipy.special import h1vp, hankel1, jv, yv

from gibc.forward.dtn import dtn_symbol, dtn_symbols, hankel_ratios


@pytest.mark.parametrize(
    "order,x,expected",
    [
        (0, 1.0, 0.7651976865579666),
        (1, 1.0, 0.44005058574493355),
    ],
)
def test_bessel_j_table(order, x, expected):
    assert jv(order, x) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize(
    "order,x,expected",
    [
        (0, 1.0, 0.08825696421567696),
        (1, 1.0, -0.7812128213002887),
    ],
)
def test_bessel_y_table(order, x, expected):
    assert yv(order, x) == pytest.approx(expected, rel=1e-14)


def test_first_hankel_ratio_matches_table():
    h0 = 0.7651976865579666 + 0.08825696421567696j
    h1 = 0.44005058574493355 - 0.7812128213002887j
    assert hankel_ratios(1, 1.0)[0] == pytest.approx(h0 / h1, rel=1e-13)


def test_ratios_stay_finite_beyond_overflow():
    ratios = hankel_ratios(400, 2.0)
    assert np.all(np.isfinite(ratios))


def test_symbols_match_scipy():
    k, radius, modes = 6.0, 1.0, 30
    symbols = dtn_symbols(modes, k, radius)
    orders = np.arange(-modes, modes + 1)
    expected = k * h1vp(orders, k * radius) / hankel1(orders, k * radius)
    np.testing.assert_allclose(symbols, expected, rtol=1e-10)


def test_symbols_are_even_in_order():
    symbols = dtn_symbols(20, 6.0, 1.0)
    np.testing.assert_allclose(symbols, symbols[::-1])


def test_symbols_have_positive_imaginary_part():
    assert np.all(dtn_symbols(40, 6.0, 1.0).imag > 0)


def test_high_frequency_limit():
    k = 400.0
    assert dtn_symbol(0, k, 1.0) / (1j * k) == pytest.approx(1.0, abs=1e-2)
