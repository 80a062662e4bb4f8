"""
Tests for boundary perturbations and impedance transport.
"""

import numpy as np
import pytest

from gibc.geometry.curve import SelfIntersection, circle, curve_fields, polygon
from gibc.geometry.perturbation import (
    Perturbation,
    StepTooLarge,
    TransportMismatch,
    apply_perturbation,
    feature_size,
    local_feature_size,
    transport_impedance,
)


def test_uniform_normal_step_grows_circle():
    curve = circle(0.3, 64)
    moved = apply_perturbation(curve, Perturbation.normal_only(np.full(64, 0.01)))
    np.testing.assert_allclose(np.linalg.norm(moved.nodes, axis=1), 0.31, rtol=1e-12)


def test_tangential_step_keeps_node_count():
    curve = circle(0.3, 64)
    moved = apply_perturbation(curve, Perturbation(np.full(64, 1e-3), np.zeros(64)))
    assert len(moved) == 64


def test_safety_bound_rejects_large_step():
    curve = circle(0.3, 64)
    with pytest.raises(StepTooLarge):
        apply_perturbation(curve, Perturbation.normal_only(np.full(64, 0.2)), safety=0.3)


def test_node_pushed_across_obstacle_self_intersects():
    curve = circle(0.3, 64)
    normal = np.zeros(64)
    normal[0] = -0.65
    with pytest.raises(SelfIntersection):
        apply_perturbation(curve, Perturbation.normal_only(normal))


def test_feature_size_of_circle_is_radius():
    assert feature_size(circle(0.3, 64)) == pytest.approx(0.3, rel=1e-10)


def test_neck_limits_feature_size():
    strip = polygon([(-0.3, -0.05), (0.3, -0.05), (0.3, 0.05), (-0.3, 0.05)], 112)
    sizes = local_feature_size(strip, curve_fields(strip))
    np.testing.assert_allclose(strip.nodes[24], [0.0, -0.05], atol=1e-12)
    assert sizes[24] == pytest.approx(0.05, rel=1e-9)


def test_transport_copies_by_index():
    old = circle(0.3, 32)
    new = apply_perturbation(old, Perturbation.normal_only(np.full(32, 0.01)))
    values = np.arange(32) * (1 + 1j)
    np.testing.assert_array_equal(transport_impedance(values, old, new), values)


def test_transport_rejects_node_count_change():
    with pytest.raises(TransportMismatch):
        transport_impedance(np.zeros(32), circle(0.3, 32), circle(0.3, 40))


def test_amplitude_adds_both_parts():
    step = Perturbation(np.array([0.03, -0.01]), np.array([-0.04, 0.0]))
    np.testing.assert_allclose(step.amplitude, [0.07, 0.01])
    assert step.max_amplitude() == pytest.approx(0.07)


def test_safety_bound_applies_to_summed_parts():
    curve = circle(0.3, 64)
    # hypot is 0.0707 and would pass the 0.09 bound; the sum 0.1 does not
    step = Perturbation(np.full(64, 0.05), np.full(64, 0.05))
    with pytest.raises(StepTooLarge):
        apply_perturbation(curve, step, safety=0.3)


def test_tangential_step_rotates_circle():
    radius, eps = 0.3, 0.01
    curve = circle(radius, 48)
    moved = apply_perturbation(curve, Perturbation(np.full(48, eps), np.zeros(48)))

    np.testing.assert_allclose(
        np.linalg.norm(moved.nodes, axis=1), np.hypot(radius, eps), rtol=1e-12
    )
    shift = np.angle(np.exp(1j * (moved.polar_angles() - curve.polar_angles())))
    np.testing.assert_allclose(shift, np.arctan2(eps, radius), atol=1e-12)
    np.testing.assert_allclose(moved.edge_lengths, moved.edge_lengths[0], rtol=1e-10)
