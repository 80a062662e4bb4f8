"""
Tests for the smoothed shape descent step.
"""

import math

import numpy as np
import pytest

from gibc.geometry.curve import BoundaryCurve, circle
from gibc.gradients.shape import ShapeGradient
from gibc.inversion.steps import shape_step
from gibc.surface.calculus import smoothing_weight
from gibc.surface.space import BoundarySpace


def _mass_load(curve: BoundaryCurve, values: np.ndarray) -> np.ndarray:
    space = BoundarySpace(curve, order=1)
    return space.assemble_matrix(np.ones(space.weights.shape), "mass") @ values


def _gradient(curve: BoundaryCurve) -> ShapeGradient:
    theta = curve.polar_angles()
    return ShapeGradient(
        _mass_load(curve, 1.0 + np.cos(2 * theta)), _mass_load(curve, np.sin(theta))
    )


class TestShapeStep:
    def test_zero_gradient_gives_zero_step(self):
        curve = circle(0.3, 48)
        step = shape_step(curve, ShapeGradient(np.zeros(48), np.zeros(48)), 0.7, 0.01, 0.01)
        assert step.max_amplitude() == 0.0

    def test_linear_in_alpha(self):
        curve = circle(0.3, 48)
        gradient = _gradient(curve)
        one = shape_step(curve, gradient, 0.5, 0.01, 0.02)
        two = shape_step(curve, gradient, 1.0, 0.01, 0.02)
        np.testing.assert_allclose(two.normal, 2 * one.normal, rtol=1e-12, atol=1e-15)
        np.testing.assert_allclose(two.tangential, 2 * one.tangential, rtol=1e-12, atol=1e-15)

    def test_descends_along_the_gradient(self):
        curve = circle(0.3, 48)
        gradient = _gradient(curve)
        assert gradient.directional(shape_step(curve, gradient, 1.0, 0.01, 0.01)) < 0

    def test_cyclic_shift_shifts_the_step(self):
        curve = BoundaryCurve(
            np.column_stack([0.3 * np.cos(np.linspace(0, 2 * math.pi, 40, endpoint=False)),
                             0.2 * np.sin(np.linspace(0, 2 * math.pi, 40, endpoint=False))])
        )
        gradient = _gradient(curve)
        step = shape_step(curve, gradient, 1.0, 0.005, 0.01)

        shifted = BoundaryCurve(np.roll(curve.nodes, 7, axis=0))
        moved = shape_step(
            shifted,
            ShapeGradient(np.roll(gradient.normal, 7), np.roll(gradient.tangential, 7)),
            1.0, 0.005, 0.01,
        )
        np.testing.assert_allclose(moved.normal, np.roll(step.normal, 7), atol=1e-12)
        np.testing.assert_allclose(moved.tangential, np.roll(step.tangential, 7), atol=1e-12)

    @pytest.mark.parametrize("order", [1, 3, 6])
    def test_single_mode_is_damped_by_the_symbol(self, order):
        radius, n = 0.3, 128
        curve = circle(radius, n)
        eta = smoothing_weight(curve, 8.0)
        mode = np.cos(order * curve.polar_angles())
        gradient = ShapeGradient(_mass_load(curve, mode), np.zeros(n))

        step = shape_step(curve, gradient, 0.5, eta, eta)

        # perimeter-based radius of the inscribed polygon
        effective = curve.perimeter / (2 * math.pi)
        symbol = 0.5 / (1.0 + eta * order**2 / effective**2)
        np.testing.assert_allclose(step.normal, -symbol * mode, rtol=1e-2, atol=1e-2 * symbol)
        np.testing.assert_allclose(step.tangential, 0.0, atol=1e-15)
