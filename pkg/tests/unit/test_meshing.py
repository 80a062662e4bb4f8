"""
Tests for annulus meshing.
"""

import math

import numpy as np
import pytest

from cli.recipes import L_SHAPE
from gibc.geometry.curve import BoundaryCurve, circle, polygon
from gibc.meshing.annulus import (
    ClearanceViolation,
    QualityFailure,
    ResolutionMismatch,
    exterior_corner_angles,
    morph_mesh,
    remesh_after_update,
    triangulate,
)


@pytest.fixture(scope="module")
def lshape_mesh():
    return triangulate(polygon(L_SHAPE, 48), radius=1.0, h=0.08)


def test_annulus_topology(lshape_mesh):
    assert lshape_mesh.euler_characteristic() == 0
    assert lshape_mesh.is_conforming()


def test_curve_nodes_are_first_vertices(lshape_mesh):
    curve = polygon(L_SHAPE, 48)
    np.testing.assert_array_equal(lshape_mesh.vertices[: len(curve)], curve.nodes)


def test_outer_nodes_lie_on_circle(lshape_mesh):
    radii = np.linalg.norm(lshape_mesh.outer_points, axis=1)
    np.testing.assert_allclose(radii, 1.0, rtol=1e-12)


def test_quality(lshape_mesh):
    assert np.all(lshape_mesh.areas() > 0)
    assert lshape_mesh.smallest_angle() >= 20.0


def test_clearance_violation():
    with pytest.raises(ClearanceViolation):
        triangulate(circle(0.9, 64), radius=1.0, h=0.1)


def test_remesh_keeps_settings():
    mesh = triangulate(circle(0.3, 38), radius=1.0, h=0.1, min_angle=25.0)
    moved = remesh_after_update(mesh, circle(0.32, 38))
    assert (moved.radius, moved.h, moved.min_angle) == (1.0, 0.1, 25.0)
    np.testing.assert_allclose(moved.vertices[:38], circle(0.32, 38).nodes)


def test_resolution_mismatch():
    with pytest.raises(ResolutionMismatch):
        triangulate(circle(0.3, 38), radius=1.0, h=0.01)


def test_sharp_notch_fails_without_refinement(caplog):
    nodes = circle(0.3, 40).nodes.copy()
    nodes[0] = [0.02, 0.0]
    curve = BoundaryCurve(nodes)
    assert exterior_corner_angles(curve)[0] == pytest.approx(19.3, abs=0.1)
    with caplog.at_level("INFO"), pytest.raises(QualityFailure):
        triangulate(curve, radius=1.0, h=0.05)
    assert "Mesh attempt" not in caplog.text


def test_circle_corners_are_convex():
    np.testing.assert_allclose(exterior_corner_angles(circle(0.3, 40)), 189.0)


def test_halving_h_quadruples_triangles():
    counts = []
    for h in (0.1, 0.05):
        curve = circle(0.3, math.ceil(2 * math.pi * 0.3 / h))
        counts.append(len(triangulate(curve, radius=1.0, h=h).triangles))
    assert 3.0 <= counts[1] / counts[0] <= 5.0


def test_meshing_is_deterministic(lshape_mesh):
    again = triangulate(polygon(L_SHAPE, 48), radius=1.0, h=0.08)
    np.testing.assert_array_equal(again.vertices, lshape_mesh.vertices)
    np.testing.assert_array_equal(again.triangles, lshape_mesh.triangles)


def test_morph_keeps_connectivity():
    mesh = triangulate(circle(0.3, 38), radius=1.0, h=0.1)
    target = circle(0.32, 38)
    moved = morph_mesh(mesh, target)
    np.testing.assert_array_equal(moved.triangles, mesh.triangles)
    np.testing.assert_array_equal(moved.vertices[:38], target.nodes)
    np.testing.assert_array_equal(moved.outer_points, mesh.outer_points)
    assert np.all(moved.areas() > 0)


def test_morph_is_affine_in_the_displacement():
    curve = circle(0.3, 38)
    mesh = triangulate(curve, radius=1.0, h=0.1)
    shift = 0.01 * np.column_stack([np.cos(3 * curve.polar_angles()), np.zeros(38)])
    one = morph_mesh(mesh, BoundaryCurve(curve.nodes + shift)).vertices
    two = morph_mesh(mesh, BoundaryCurve(curve.nodes + 2 * shift)).vertices
    np.testing.assert_allclose(two - mesh.vertices, 2 * (one - mesh.vertices), atol=1e-12)
    np.testing.assert_array_equal(morph_mesh(mesh, curve).vertices, mesh.vertices)
