"""
Far-field patterns and the reciprocity check.
"""

import logging
import math
from typing import Optional

import numpy as np

from gibc.fields.herglotz import far_field_constant
from gibc.fields.plane import PlaneWave
from gibc.fields.point import PointSource
from gibc.forward.dtn import exterior_far_field
from gibc.forward.solver import ScatterProblem, ScatterSolution

logger = logging.getLogger(__name__)


def observation_angles(samples: int) -> np.ndarray:
    return 2.0 * math.pi * np.arange(samples) / samples


class FarField:
    """
    Far-field pattern sampled at ``M`` equispaced directions.

    Metadata records how the pattern was produced so it can be written with
    its header and compared against data of the same setup.
    """

    __slots__ = ("values", "k", "radius", "modes", "incident_angle")

    def __init__(
        self,
        values: np.ndarray,
        k: float,
        radius: float = 1.0,
        modes: int = 0,
        incident_angle: Optional[float] = None,
    ):
        self.values = np.asarray(values, dtype=complex)
        self.k = k
        self.radius = radius
        self.modes = modes
        self.incident_angle = incident_angle

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __repr__(self) -> str:
        return f"FarField(samples={len(self)}, k={self.k:g}, norm={self.norm():.4g})"

    @property
    def angles(self) -> np.ndarray:
        return observation_angles(len(self))

    @property
    def weight(self) -> float:
        """Trapezoid weight of each sample on the unit circle."""
        return 2.0 * math.pi / len(self)

    def norm(self) -> float:
        """Discrete ``L2`` norm on the unit circle."""
        return float(math.sqrt(self.weight * np.sum(np.abs(self.values) ** 2)))

    def fourier_coefficients(self) -> np.ndarray:
        """Coefficients ``c_n`` with ``u(theta) = sum c_n exp(i n theta)`` in FFT order."""
        return np.fft.fft(self.values) / len(self)

    def with_values(self, values: np.ndarray) -> "FarField":
        return FarField(values, self.k, self.radius, self.modes, self.incident_angle)

    def __sub__(self, other: "FarField") -> "FarField":
        if len(self) != len(other):
            raise ValueError("far fields have different sample counts")
        return self.with_values(self.values - other.values)


class ObservationSet:
    """Measured far fields, one per incident direction."""

    __slots__ = ("far_fields", "noise_level", "seed")

    def __init__(self, far_fields: list[FarField], noise_level: float = 0.0, seed: int = 0):
        if not far_fields:
            raise ValueError("observation set is empty")
        samples = {len(f) for f in far_fields}
        if len(samples) != 1:
            raise ValueError("observed far fields have different sample counts")
        self.far_fields = far_fields
        self.noise_level = noise_level
        self.seed = seed

    def __len__(self) -> int:
        return len(self.far_fields)

    def __iter__(self):  # type: ignore[no-untyped-def]
        return iter(self.far_fields)

    @property
    def samples(self) -> int:
        return len(self.far_fields[0])

    @property
    def energy(self) -> float:
        """Sum of squared far-field norms, twice the misfit of an empty model."""
        return float(sum(f.norm() ** 2 for f in self.far_fields))

    @property
    def k(self) -> float:
        return self.far_fields[0].k

    @property
    def incident_angles(self) -> list[float]:
        angles = [f.incident_angle for f in self.far_fields]
        if any(a is None for a in angles):
            raise ValueError("observations without incident directions")
        return [float(a) for a in angles if a is not None]


def far_field_at(solution: ScatterSolution, angles: np.ndarray) -> np.ndarray:
    """
    Far-field pattern in the given directions.

    Integrates ``u^s d_nu Phi + d_nu u^i Phi - mu u' Phi' + lambda u Phi`` over
    the obstacle with ``Phi(x, y) = gamma exp(-i k x . y)`` and ``u`` the total
    field, which is the boundary representation with the impedance condition
    substituted for the normal derivative of the scattered field.
    """
    problem = solution.problem
    boundary = problem.boundary
    k = problem.k
    directions = np.column_stack([np.cos(angles), np.sin(angles)])

    trace = solution.quadrature_trace()
    points = boundary.points
    incident = solution.incident
    ui = incident.evaluate(points)
    dn_ui = np.sum(incident.gradient(points) * boundary.edge_normal[:, None, :], axis=-1)
    us = trace.values - ui

    kernel = far_field_constant(k) * np.exp(-1j * k * np.einsum("eqd,md->meq", points, directions))
    normal_dot = directions @ boundary.edge_normal.T
    tangent_dot = directions @ boundary.edge_tangent.T
    dn_kernel = -1j * k * normal_dot[:, :, None] * kernel
    ds_kernel = -1j * k * tangent_dot[:, :, None] * kernel

    integrand = (
        us[None] * dn_kernel
        + dn_ui[None] * kernel
        - (problem.mu_q * trace.ds)[None] * ds_kernel
        + (problem.lam_q * trace.values)[None] * kernel
    )
    return np.einsum("meq,eq->m", integrand, boundary.weights)


def far_field(solution: ScatterSolution, samples: int) -> FarField:
    """Far-field pattern at ``samples`` equispaced directions."""
    config = solution.problem.config
    angle = solution.incident.angle if isinstance(solution.incident, PlaneWave) else None
    return FarField(
        far_field_at(solution, observation_angles(samples)),
        solution.problem.k,
        config.radius,
        config.modes,
        angle,
    )


def far_fields(solutions: list[ScatterSolution], samples: int) -> list[FarField]:
    return [far_field(solution, samples) for solution in solutions]


def far_field_from_circle(solution: ScatterSolution, samples: int) -> FarField:
    """
    Far-field pattern from the Fourier series of the scattered trace on the DtN circle.

    Independent of the obstacle quadrature; agrees with ``far_field`` up to the
    discretization error.
    """
    problem = solution.problem
    config = problem.config
    values = exterior_far_field(
        solution.outer_coefficients(), problem.k, config.radius, observation_angles(samples)
    )
    angle = solution.incident.angle if isinstance(solution.incident, PlaneWave) else None
    return FarField(values, problem.k, config.radius, config.modes, angle)


def mixed_reciprocity_residual(
    problem: ScatterProblem, angle: float, source: tuple[float, float]
) -> float:
    """
    Relative defect of ``w_inf(-x, z) = gamma u^s(z, x)``.

    ``w`` is the scattered field of a point source at ``z`` and ``u^s(., x)``
    the scattered field of the plane wave travelling in direction ``x``.

    Raises:
        ValueError: If the source is not inside the meshed annulus.
    """
    k = problem.k
    point_solution, plane_solution = problem.solve_many(
        [PointSource(k, source), PlaneWave(k, angle)]
    )
    w_inf = far_field_at(point_solution, np.array([angle + math.pi]))[0]
    reference = far_field_constant(k) * plane_solution.scattered_at(np.asarray(source))[0]
    residual = abs(w_inf - reference) / abs(reference)
    logger.debug(f"Mixed reciprocity residual {residual:.3e} at angle {angle:.3f}")
    return float(residual)
