"""
Herglotz wave functions built from far-field patterns.
"""

import math

import numpy as np

from gibc.fields.base import IncidentField, IncidentKind


def far_field_constant(k: float) -> complex:
    """Normalization ``gamma`` of the far-field pattern."""
    return complex(np.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * k))


class HerglotzField(IncidentField):
    """
    ``gamma * sum_m w_m g_m exp(-i k y . x_m)`` over observation directions.

    With ``g`` the conjugated far-field residual this is the incident field of
    the adjoint problem.
    """

    kind = IncidentKind.HERGLOTZ

    def __init__(self, k: float, angles: np.ndarray, density: np.ndarray, weight: float):
        super().__init__(k)
        angles = np.asarray(angles, dtype=float)
        density = np.asarray(density, dtype=complex)
        if angles.shape != density.shape:
            raise ValueError("angles and density must have the same shape")
        self.angles = angles
        self.density = density
        self.weight = weight
        self.directions = np.column_stack([np.cos(angles), np.sin(angles)])
        self._coefficients = far_field_constant(k) * weight * density

    def __repr__(self) -> str:
        return f"HerglotzField(k={self.k:g}, samples={len(self.angles)})"

    def _phases(self, points: np.ndarray) -> np.ndarray:
        return np.exp(-1j * self.k * (points @ self.directions.T))

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return self._phases(points) @ self._coefficients

    def gradient(self, points: np.ndarray) -> np.ndarray:
        weighted = self._phases(points) * self._coefficients
        return -1j * self.k * (weighted @ self.directions)
