"""
Point-source incident field.
"""

import numpy as np
from scipy.special import hankel1

from gibc.fields.base import IncidentField, IncidentKind


class PointSource(IncidentField):
    """Outgoing fundamental solution ``(i/4) H0(k |x - z|)``."""

    kind = IncidentKind.POINT

    def __init__(self, k: float, source: tuple[float, float] | np.ndarray):
        super().__init__(k)
        self.source = np.asarray(source, dtype=float)

    def __repr__(self) -> str:
        return f"PointSource(k={self.k:g}, source={self.source.tolist()})"

    def _offsets(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        diff = points - self.source
        rho = np.linalg.norm(diff, axis=-1)
        if np.any(rho == 0.0):
            raise ValueError("point source evaluated at its own location")
        return diff, rho

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        _, rho = self._offsets(points)
        return 0.25j * hankel1(0, self.k * rho)

    def gradient(self, points: np.ndarray) -> np.ndarray:
        diff, rho = self._offsets(points)
        radial = -0.25j * self.k * hankel1(1, self.k * rho) / rho
        return radial[..., None] * diff
