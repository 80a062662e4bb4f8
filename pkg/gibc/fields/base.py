"""
Base interface for incident fields.
"""

from abc import ABC, abstractmethod
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np


class IncidentKind(StrEnum):
    PLANE = "plane"
    POINT = "point"
    HERGLOTZ = "herglotz"


class IncidentField(ABC):
    """
    Abstract entire or locally radiating solution of the Helmholtz equation.

    All incident fields drive the same scattered-field system; only the
    boundary load depends on the field.
    """

    kind: IncidentKind

    def __init__(self, k: float):
        """
        Initialize the field.

        Args:
            k: Wavenumber.
        """
        if k <= 0:
            raise ValueError("wavenumber must be positive")
        self.k = k

    @abstractmethod
    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        Field values.

        Args:
            points: Array of shape ``(..., 2)``.

        Returns:
            Complex array of shape ``(...)``.
        """
        pass

    @abstractmethod
    def gradient(self, points: np.ndarray) -> np.ndarray:
        """
        Field gradient.

        Args:
            points: Array of shape ``(..., 2)``.

        Returns:
            Complex array of shape ``(..., 2)``.
        """
        pass

    def directional(self, points: np.ndarray, directions: np.ndarray) -> np.ndarray:
        """Derivative along ``directions`` (same leading shape as ``points``)."""
        return np.sum(self.gradient(points) * directions, axis=-1)
