"""
Far-field misfit of an obstacle model against observations.
"""

import logging
import math
from typing import Optional

from gibc.fields.plane import plane_waves
from gibc.forward.farfield import FarField, ObservationSet, far_fields
from gibc.forward.solver import ScatterProblem, ScatterSolution
from gibc.geometry.curve import BoundaryCurve, CurveFields, curve_fields
from gibc.meshing.annulus import AnnulusMesh, triangulate
from gibc.models.configs import MeshConfig, ScatterConfig
from gibc.surface.impedance import ImpedanceField

logger = logging.getLogger(__name__)


def misfit(computed: list[FarField], data: ObservationSet) -> tuple[float, float, list[FarField]]:
    """
    Cost, relative error and residuals.

    ``F = 1/2 sum_j ||T_j - d_j||^2`` and ``Error = 1/N sum_j ||T_j - d_j|| / ||d_j||``
    with trapezoid norms on the unit circle.
    """
    if len(computed) != len(data):
        raise ValueError(f"{len(computed)} far fields for {len(data)} observations")
    residuals = [t - d for t, d in zip(computed, data)]
    cost = 0.5 * sum(r.norm() ** 2 for r in residuals)
    error = sum(r.norm() / d.norm() for r, d in zip(residuals, data)) / len(data)
    return cost, error, residuals


class ModelEvaluation:
    """Forward solutions, far fields and misfit of one obstacle model."""

    def __init__(
        self,
        curve: BoundaryCurve,
        impedance: ImpedanceField,
        mesh: AnnulusMesh,
        problem: ScatterProblem,
        solutions: list[ScatterSolution],
        far_fields: list[FarField],
        data: ObservationSet,
    ):
        self.curve = curve
        self.impedance = impedance
        self.mesh = mesh
        self.problem = problem
        self.solutions = solutions
        self.far_fields = far_fields
        self.cost, self.error, self.residuals = misfit(far_fields, data)
        self._fields: Optional[CurveFields] = None

    @property
    def fields(self) -> CurveFields:
        if self._fields is None:
            self._fields = curve_fields(self.curve)
        return self._fields

    def __repr__(self) -> str:
        return f"ModelEvaluation(F={self.cost:.6e}, Error={self.error:.4%})"


def evaluate_model(
    scatter: ScatterConfig,
    mesh_config: MeshConfig,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    data: ObservationSet,
    mesh: Optional[AnnulusMesh] = None,
    threads: int = 1,
) -> ModelEvaluation:
    """
    Solve every incident plane wave of ``data`` for the model.

    Raises:
        ClearanceViolation: If the curve is too close to the DtN circle.
        QualityFailure: If the annulus cannot be meshed.
        SolveFailure: If a solve breaks down.
    """
    if mesh is None:
        mesh = triangulate(curve, scatter.radius, mesh_config.h, mesh_config.min_angle)
    problem = ScatterProblem(scatter, curve, impedance, mesh)
    solutions = problem.solve_many(plane_waves(scatter.wavenumber, data.incident_angles), threads)
    computed = far_fields(solutions, data.samples)
    return ModelEvaluation(curve, impedance, mesh, problem, solutions, computed, data)


def cost(
    scatter: ScatterConfig,
    mesh_config: MeshConfig,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    data: ObservationSet,
) -> tuple[float, float]:
    """``(F, Error)`` of a model."""
    evaluation = evaluate_model(scatter, mesh_config, curve, impedance, data)
    if not math.isfinite(evaluation.cost):
        raise ValueError("non-finite cost")
    return evaluation.cost, evaluation.error
