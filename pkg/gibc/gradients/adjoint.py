"""
Adjoint states of the far-field misfit.
"""

import logging

import numpy as np

from gibc.fields.herglotz import HerglotzField
from gibc.forward.farfield import FarField
from gibc.forward.solver import ScatterProblem, ScatterSolution

logger = logging.getLogger(__name__)

# Adjoint fields are scattering solutions driven by a Herglotz incident field.
AdjointSolution = ScatterSolution


def adjoint_incident(residual: FarField) -> HerglotzField:
    """Herglotz wave whose density is the conjugated far-field residual."""
    return HerglotzField(residual.k, residual.angles, np.conj(residual.values), residual.weight)


def solve_adjoints(
    problem: ScatterProblem, residuals: list[FarField], threads: int = 1
) -> list[ScatterSolution]:
    """
    Adjoint fields, one per incident wave.

    The adjoint solves the forward system with a Herglotz incident field; its
    total field ``G`` is what the gradient formulas pair with ``u``.
    """
    incidents = [adjoint_incident(residual) for residual in residuals]
    adjoints = problem.solve_many(incidents, threads=threads)
    logger.debug(f"Solved {len(adjoints)} adjoint problems")
    return adjoints
