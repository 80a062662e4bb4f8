"""
Forward solver against the disk series and the mixed reciprocity relation.
"""

import math

import numpy as np
import pytest

from gibc.fields.herglotz import HerglotzField, far_field_constant
from gibc.fields.plane import PlaneWave
from gibc.forward.farfield import far_field, far_field_from_circle
from gibc.forward.solver import (
    RESIDUAL_TOLERANCE,
    MeshMismatch,
    ScatterProblem,
    assemble_and_solve,
)
from gibc.geometry.curve import circle
from gibc.inversion.cost import cost
from gibc.meshing.annulus import triangulate
from gibc.models.configs import ScatterConfig
from gibc.oracle.circle import circle_series, oracle_farfield_compare
from gibc.services.validation import oracle_data, reciprocity_residual, trefoil
from gibc.surface.impedance import ImpedanceField

RADIUS, LAM, MU = 0.3, 0.5j, 2.0


@pytest.fixture(scope="module")
def disk_problem():
    curve = circle(RADIUS, 48)
    mesh = triangulate(curve, 1.0, 0.04)
    return ScatterProblem(ScatterConfig(), curve, ImpedanceField.constant(48, LAM, MU), mesh)


@pytest.mark.parametrize("angle", [0.0, 1.1])
def test_far_field_matches_disk_series(disk_problem, angle):
    solution = disk_problem.solve(PlaneWave(6.0, angle))
    _, reference = circle_series(RADIUS, LAM, MU, 6.0, angle, 64)
    assert oracle_farfield_compare(far_field(solution, 64), reference) < 1e-2


def test_far_field_routes_agree(disk_problem):
    solution = disk_problem.solve(PlaneWave(6.0, 0.3))
    computed = far_field(solution, 64)
    assert oracle_farfield_compare(far_field_from_circle(solution, 64), computed) < 1e-2


def test_scattered_field_outside_circle_matches_series(disk_problem):
    solution = disk_problem.solve(PlaneWave(6.0, 0.0))
    coefficients, _ = circle_series(RADIUS, LAM, MU, 6.0, 0.0, 16)
    points = np.array([[1.5, 0.0], [0.0, -2.0], [1.2, 1.2]])
    reference = coefficients.scattered(points, 0.0)
    gap = np.max(np.abs(solution.scattered_at(points) - reference)) / np.max(np.abs(reference))
    assert gap < 2e-2


def test_batch_solve_matches_single_solves(disk_problem):
    waves = [PlaneWave(6.0, a) for a in (0.0, 2.0)]
    batch = disk_problem.solve_many(waves, threads=2)
    for wave, solution in zip(waves, batch):
        np.testing.assert_allclose(solution.scattered, disk_problem.solve(wave).scattered)


def test_matrix_is_complex_symmetric(disk_problem):
    matrix = disk_problem.matrix
    assert abs(matrix - matrix.T).max() < 1e-10 * abs(matrix).max()


def test_mesh_mismatch_is_rejected():
    mesh = triangulate(circle(RADIUS, 48), 1.0, 0.1)
    with pytest.raises(MeshMismatch):
        ScatterProblem(
            ScatterConfig(), circle(0.31, 48), ImpedanceField.constant(48, LAM, MU), mesh
        )


def test_reciprocity_on_disk(disk_config):
    curve = circle(RADIUS, 38)
    residual = reciprocity_residual(disk_config, curve, ImpedanceField.constant(38, LAM, MU))
    assert residual < 2e-2


def test_reciprocity_on_trefoil(disk_config):
    curve = trefoil(disk_config)
    residual = reciprocity_residual(
        disk_config, curve, ImpedanceField.constant(len(curve), LAM, MU), angle=math.pi / 3
    )
    assert residual < 5e-2


def test_single_solve_helper(disk_problem):
    wave = PlaneWave(6.0, 0.5)
    solution = assemble_and_solve(
        disk_problem.config, disk_problem.mesh, disk_problem.curve, disk_problem.impedance, wave
    )
    np.testing.assert_allclose(solution.scattered, disk_problem.solve(wave).scattered)


def test_cost_of_true_disk_is_small(disk_config):
    data = oracle_data(disk_config, RADIUS, LAM, MU)
    curve = circle(RADIUS, 48)
    value, error = cost(
        disk_config.scatter, disk_config.mesh, curve, ImpedanceField.constant(48, LAM, MU), data
    )
    assert error < 2e-2
    # each ratio is at most len(data) * error
    assert value <= 0.5 * sum(f.norm() ** 2 for f in data) * (len(data) * error) ** 2


def test_solver_residual_meets_tolerance(disk_problem):
    wave = PlaneWave(6.0, 0.4)
    solution = disk_problem.solve(wave)
    rhs = disk_problem.load(wave)[:, None]
    assert RESIDUAL_TOLERANCE == 1e-10
    assert disk_problem.relative_residual(rhs, solution.scattered[:, None])[0] < 1e-10


def test_more_dtn_modes_leave_far_field_unchanged(disk_problem):
    config = ScatterConfig(dtn_modes=disk_problem.config.modes + 16)
    wider = ScatterProblem(config, disk_problem.curve, disk_problem.impedance, disk_problem.mesh)
    wave = PlaneWave(6.0, 0.9)
    gap = oracle_farfield_compare(
        far_field(wider.solve(wave), 64), far_field(disk_problem.solve(wave), 64)
    )
    assert gap < 1e-6


def test_far_field_is_linear_in_the_incident_field(disk_problem):
    angles = np.array([0.3, 2.5])
    density = np.array([1.0 - 0.5j, 0.25 + 2.0j])
    weight = 2.0 * math.pi / 64
    combined = far_field(disk_problem.solve(HerglotzField(6.0, angles, density, weight)), 64)

    parts = [far_field(disk_problem.solve(PlaneWave(6.0, a + math.pi)), 64) for a in angles]
    expected = far_field_constant(6.0) * weight * sum(g * p.values for g, p in zip(density, parts))
    gap = np.linalg.norm(combined.values - expected) / np.linalg.norm(expected)
    assert gap < 1e-10


def test_lossless_trefoil_satisfies_optical_theorem(disk_config):
    curve = trefoil(disk_config)
    impedance = ImpedanceField.constant(len(curve), 0.5, 1.0)
    problem = ScatterProblem(ScatterConfig(), curve, impedance, triangulate(curve, 1.0, 0.04))
    pattern = far_field(problem.solve(PlaneWave(6.0, 0.0)), 128)

    forward = np.exp(0.25j * math.pi) * pattern.values[0]
    expected = -math.sqrt(8.0 * math.pi / 6.0) * forward.real
    assert pattern.norm() ** 2 == pytest.approx(expected, rel=3e-2)
