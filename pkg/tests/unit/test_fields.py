"""
Tests for incident fields.
"""

import math

import numpy as np
import pytest
from scipy.special import jv

from gibc.fields.herglotz import HerglotzField, far_field_constant
from gibc.fields.plane import PlaneWave
from gibc.fields.point import PointSource
from gibc.forward.farfield import observation_angles


@pytest.fixture
def points(rng):
    radius = 0.5 * np.sqrt(rng.random(20))
    theta = 2.0 * math.pi * rng.random(20)
    return np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])


def _numerical_gradient(field, points, step=1e-6):
    columns = []
    for axis in range(2):
        offset = np.zeros(2)
        offset[axis] = step
        columns.append((field.evaluate(points + offset) - field.evaluate(points - offset)) / (2 * step))
    return np.stack(columns, axis=-1)


@pytest.mark.parametrize(
    "field",
    [PlaneWave(6.0, 0.7), PointSource(6.0, (0.8, -0.3))],
    ids=["plane", "point"],
)
def test_gradient_matches_finite_differences(field, points):
    np.testing.assert_allclose(field.gradient(points), _numerical_gradient(field, points), rtol=1e-6, atol=1e-8)


def test_herglotz_jacobi_anger(points):
    k, order, samples = 6.0, 2, 64
    angles = observation_angles(samples)
    field = HerglotzField(k, angles, np.exp(1j * order * angles), 2.0 * math.pi / samples)

    r = np.linalg.norm(points, axis=1)
    theta = np.arctan2(points[:, 1], points[:, 0])
    expected = (
        far_field_constant(k) * 2.0 * math.pi * (-1j) ** order * jv(order, k * r) * np.exp(1j * order * theta)
    )
    np.testing.assert_allclose(field.evaluate(points), expected, atol=1e-12)


def test_herglotz_gradient_matches_finite_differences(points, rng):
    angles = observation_angles(32)
    field = HerglotzField(6.0, angles, rng.standard_normal(32) + 1j * rng.standard_normal(32), 0.2)
    np.testing.assert_allclose(field.gradient(points), _numerical_gradient(field, points), rtol=1e-6, atol=1e-8)


def test_point_source_rejects_its_own_location():
    with pytest.raises(ValueError):
        PointSource(6.0, (0.1, 0.2)).evaluate(np.array([[0.1, 0.2]]))
