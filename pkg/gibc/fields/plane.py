"""
Plane-wave incident field.
"""

import math

import numpy as np

from gibc.fields.base import IncidentField, IncidentKind


class PlaneWave(IncidentField):
    """``exp(i k x . d)`` with ``d = (cos angle, sin angle)``."""

    kind = IncidentKind.PLANE

    def __init__(self, k: float, angle: float):
        super().__init__(k)
        self.angle = angle
        self.direction = np.array([math.cos(angle), math.sin(angle)])

    def __repr__(self) -> str:
        return f"PlaneWave(k={self.k:g}, angle={self.angle:.4f})"

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.exp(1j * self.k * (points @ self.direction))

    def gradient(self, points: np.ndarray) -> np.ndarray:
        return (1j * self.k * self.evaluate(points))[..., None] * self.direction


def plane_waves(k: float, angles: list[float]) -> list[PlaneWave]:
    return [PlaneWave(k, angle) for angle in angles]
