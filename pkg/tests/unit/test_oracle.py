"""
Tests for the disk series solution.
"""

import math

import numpy as np
import pytest
from scipy.special import h1vp, hankel1, jv, jvp

from gibc.oracle.circle import circle_series, mode_coefficients, oracle_cost


def test_lossless_impedance_is_unitary():
    coefficients = mode_coefficients(0.3, 0.5, 2.0, 6.0)
    assert coefficients.unitarity_defect() < 1e-12


def test_large_lambda_approaches_sound_soft():
    k, radius = 6.0, 0.3
    coefficients = mode_coefficients(radius, 1e10, 0.0, k, truncation=10, dimensionless=False)
    orders = coefficients.orders
    expected = -jv(orders, k * radius) / hankel1(orders, k * radius)
    np.testing.assert_allclose(coefficients.values, expected, rtol=1e-6, atol=1e-12)


def test_zero_impedance_is_sound_hard():
    k, radius = 6.0, 0.3
    coefficients = mode_coefficients(radius, 0.0, 0.0, k, truncation=10, dimensionless=False)
    orders = coefficients.orders
    expected = -jvp(orders, k * radius) / h1vp(orders, k * radius)
    np.testing.assert_allclose(coefficients.values, expected, rtol=1e-12)


def test_far_field_is_rotation_covariant():
    _, base = circle_series(0.3, 0.5j, 2.0, 6.0, incident_angle=0.0, samples=64)
    shift = 2.0 * math.pi * 5 / 64
    _, rotated = circle_series(0.3, 0.5j, 2.0, 6.0, incident_angle=shift, samples=64)
    np.testing.assert_allclose(rotated.values, np.roll(base.values, 5), atol=1e-13)


def test_series_stops_at_first_negligible_order():
    coefficients = mode_coefficients(0.3, 0.5j, 2.0, 6.0)
    values = coefficients.values
    assert max(abs(values[0]), abs(values[-1])) < 1e-14
    assert max(abs(values[1]), abs(values[-2])) >= 1e-14
    assert coefficients.truncation > 6.0 * 0.3


def test_wider_truncation_only_adds_negligible_modes():
    short = mode_coefficients(0.3, 0.5j, 2.0, 6.0)
    wide = mode_coefficients(0.3, 0.5j, 2.0, 6.0, truncation=short.truncation + 10)
    extra = wide.truncation - short.truncation
    np.testing.assert_allclose(wide.values[extra:-extra], short.values, rtol=1e-14)
    assert np.max(np.abs(wide.values[:extra])) < 1e-14


def test_optical_theorem_for_lossless_disk():
    _, pattern = circle_series(0.3, 0.5, 2.0, 6.0, incident_angle=0.0, samples=128)
    forward = np.exp(0.25j * math.pi) * pattern.values[0]
    expected = -math.sqrt(8.0 * math.pi / 6.0) * forward.real
    assert pattern.norm() ** 2 == pytest.approx(expected, rel=1e-10)


def test_oracle_cost_vanishes_on_its_own_data():
    angles = [0.0, math.pi / 2]
    data = [circle_series(0.3, 0.5j, 2.0, 6.0, a, 32)[1] for a in angles]
    assert oracle_cost(0.3, 0.5j, 2.0, 6.0, angles, data) == pytest.approx(0.0, abs=1e-28)
    assert oracle_cost(0.31, 0.5j, 2.0, 6.0, angles, data) > 1e-6
