"""
Synthetic far-field data with calibrated noise.
"""

import logging
from typing import Optional

import numpy as np

from gibc.forward.farfield import FarField, ObservationSet, far_fields
from gibc.forward.solver import ScatterProblem
from gibc.geometry.curve import BoundaryCurve
from gibc.meshing.annulus import triangulate
from gibc.models.configs import RunConfig
from gibc.services.builders import build_incidents
from gibc.surface.impedance import ImpedanceField

logger = logging.getLogger(__name__)


def add_noise(far_field: FarField, level: float, rng: np.random.Generator) -> FarField:
    """
    Perturb a far field with complex Gaussian noise on its Fourier coefficients.

    The perturbation is rescaled so that its norm is exactly ``level`` times
    the norm of the clean pattern.
    """
    if level == 0.0:
        return far_field
    samples = len(far_field)
    coefficients = rng.standard_normal(samples) + 1j * rng.standard_normal(samples)
    noise = np.fft.ifft(coefficients) * samples
    scale = level * np.linalg.norm(far_field.values) / np.linalg.norm(noise)
    return far_field.with_values(far_field.values + scale * noise)


def synthesize_data(
    config: RunConfig,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    seed: Optional[int] = None,
    threads: int = 1,
) -> tuple[ObservationSet, ObservationSet]:
    """
    Far fields of the true model on the data mesh, clean and noisy.

    The data mesh uses ``config.mesh.data_h`` so inversions on the default
    mesh do not reuse the discretization that produced the data.

    Returns:
        ``(clean, noisy)`` observation sets.
    """
    seed = config.noise_seed if seed is None else seed
    mesh = triangulate(
        curve, config.scatter.radius, config.mesh.data_h, config.mesh.min_angle
    )
    problem = ScatterProblem(config.scatter, curve, impedance, mesh)
    solutions = problem.solve_many(build_incidents(config), threads=threads)
    clean = far_fields(solutions, config.incidence.observations)
    logger.info(
        f"Synthesized {len(clean)} far fields on a mesh with {len(mesh.triangles)} triangles"
    )

    rng = np.random.default_rng(seed)
    noisy = [add_noise(f, config.noise.level, rng) for f in clean]
    return (
        ObservationSet(clean, 0.0, seed),
        ObservationSet(noisy, config.noise.level, seed),
    )
