"""
Tests for boundary curves, resampling and discrete curve geometry.
"""

import math

import numpy as np
import pytest
from shapely.geometry import Point

from cli.recipes import L_SHAPE
from gibc.geometry.curve import (
    BoundaryCurve,
    CurveError,
    SelfIntersection,
    circle,
    curve_fields,
    ellipse,
    node_count,
    polygon,
    resample,
    resample_field,
)


class TestBoundaryCurve:
    def test_rejects_clockwise_nodes(self):
        nodes = circle(1.0, 32).nodes[::-1]
        with pytest.raises(CurveError):
            BoundaryCurve(nodes)

    def test_orient_reverses_clockwise_nodes(self):
        nodes = circle(1.0, 32).nodes[::-1]
        curve = BoundaryCurve(nodes, orient=True)
        assert curve.area > 0

    def test_rejects_self_intersection(self):
        bow_tie = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]
        with pytest.raises(SelfIntersection):
            BoundaryCurve(bow_tie, orient=True)

    def test_rejects_repeated_nodes(self):
        with pytest.raises(CurveError):
            BoundaryCurve([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 1.0)])

    def test_nodes_are_read_only(self):
        curve = circle(1.0, 16)
        with pytest.raises(ValueError):
            curve.nodes[0, 0] = 2.0

    def test_interior_point_is_inside(self):
        curve = polygon(L_SHAPE)
        point = curve.interior_point()
        assert curve.polygon().contains(Point(point))


class TestResample:
    def test_spline_resample_of_circle_stays_on_circle(self):
        curve = resample(circle(1.0, 64), 200, method="spline")
        radii = np.linalg.norm(curve.nodes, axis=1)
        assert np.max(np.abs(radii - 1.0)) < 1e-5

    def test_linear_resample_is_idempotent(self):
        curve = resample(ellipse((0.4, 0.2), 80), 50, method="linear")
        again = resample(curve, 50, method="linear")
        np.testing.assert_allclose(again.nodes, curve.nodes, atol=1e-12)

    def test_keeps_first_node(self):
        curve = ellipse((0.4, 0.2), 80)
        np.testing.assert_allclose(resample(curve, 40).nodes[0], curve.nodes[0])

    def test_rejects_too_few_nodes(self):
        with pytest.raises(CurveError):
            resample(circle(1.0, 64), 8)

    def test_lshape_edges_are_equal(self):
        curve = polygon(L_SHAPE, node_count(2.4, 0.05))
        assert len(curve) == 48
        np.testing.assert_allclose(curve.edge_lengths, 0.05, rtol=1e-9)

    def test_resample_field_moves_values_with_arclength(self):
        old = circle(1.0, 64)
        new = circle(1.0, 128)
        values = np.cos(old.polar_angles()) + 1j * np.sin(2 * old.polar_angles())
        moved = resample_field(values, old, new)
        expected = np.cos(new.polar_angles()) + 1j * np.sin(2 * new.polar_angles())
        np.testing.assert_allclose(moved, expected, atol=5e-3)


class TestCurveFields:
    def test_circle_curvature_is_exact(self):
        fields = curve_fields(circle(0.5, 100))
        np.testing.assert_allclose(fields.curvature, 2.0, rtol=1e-10)

    def test_ellipse_curvature_at_vertices(self):
        a, b = 0.4, 0.2
        n = 400
        fields = curve_fields(ellipse((a, b), n))
        assert fields.curvature[0] == pytest.approx(a / b**2, rel=1e-2)
        assert fields.curvature[n // 4] == pytest.approx(b / a**2, rel=1e-2)

    def test_normal_points_outward(self):
        curve = circle(1.0, 64)
        fields = curve_fields(curve)
        radial = curve.nodes / np.linalg.norm(curve.nodes, axis=1)[:, None]
        np.testing.assert_allclose(fields.normal, radial, atol=1e-12)

    def test_weights_integrate_perimeter(self):
        curve = ellipse((0.4, 0.2), 120)
        fields = curve_fields(curve)
        assert fields.integrate(np.ones(len(curve))) == pytest.approx(curve.perimeter)

    def test_lshape_reentrant_corner_has_negative_curvature(self):
        curve = polygon(L_SHAPE, 48)
        corner = int(np.argmin(np.linalg.norm(curve.nodes, axis=1)))
        assert curve_fields(curve).curvature[corner] < 0


def test_node_count_has_floor():
    assert node_count(0.1, 0.05) == 16
    assert node_count(2.0 * math.pi * 0.3, 0.05) == 38
