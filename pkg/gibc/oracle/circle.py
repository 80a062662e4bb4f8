"""
Separation-of-variables solution for a disk with constant impedances.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.special import h1vp, hankel1, jv, jvp

from gibc.forward.farfield import FarField, observation_angles

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-14
SEARCH_MARGIN = 64


class ModeCoefficients:
    """Scattering coefficients ``a_n`` of a disk for ``n = -N .. N``."""

    __slots__ = ("orders", "values", "k", "radius", "lam", "mu")

    def __init__(
        self,
        orders: np.ndarray,
        values: np.ndarray,
        k: float,
        radius: float,
        lam: complex,
        mu: complex,
    ):
        self.orders = orders
        self.values = values
        self.k = k
        self.radius = radius
        self.lam = lam
        self.mu = mu

    @property
    def truncation(self) -> int:
        return int(self.orders[-1])

    def far_field(self, incident_angle: float, samples: int) -> FarField:
        """Far-field pattern for a plane wave incident from ``incident_angle``."""
        theta = observation_angles(samples)
        phases = np.exp(1j * np.outer(theta - incident_angle, self.orders))
        values = math.sqrt(2.0 / (math.pi * self.k)) * np.exp(-0.25j * math.pi) * (
            phases @ self.values
        )
        return FarField(values, self.k, incident_angle=incident_angle, modes=self.truncation)

    def scattered(self, points: np.ndarray, incident_angle: float) -> np.ndarray:
        """Scattered field ``sum a_n i^n H_n(k r) exp(i n (theta - d))`` outside the disk."""
        r = np.linalg.norm(points, axis=-1)
        theta = np.arctan2(points[..., 1], points[..., 0])
        total = np.zeros(r.shape, dtype=complex)
        for n, a in zip(self.orders, self.values):
            total += a * (1j**n) * hankel1(n, self.k * r) * np.exp(1j * n * (theta - incident_angle))
        return total

    def unitarity_defect(self) -> float:
        """``max |1 + 2 a_n| - 1`` over the modes; zero for lossless impedances."""
        return float(np.max(np.abs(np.abs(1.0 + 2.0 * self.values) - 1.0)))


def physical_impedance(
    lam: complex, mu: complex, k: float, dimensionless: bool
) -> tuple[complex, complex]:
    if dimensionless:
        return k * lam, mu / k
    return lam, mu


def mode_coefficients(
    radius: float,
    lam: complex,
    mu: complex,
    k: float,
    truncation: Optional[int] = None,
    dimensionless: bool = True,
) -> ModeCoefficients:
    """
    Scattering coefficients of a disk.

    With ``Z_n = lambda - mu n^2 / a^2`` the impedance condition gives
    ``a_n = -(k J_n' + Z_n J_n) / (k H_n' + Z_n H_n)``. Without an explicit
    truncation the series stops at the first order past ``k a`` whose
    coefficients are below ``TAIL_TOLERANCE``.

    Raises:
        ModeResonance: If a denominator vanishes.
    """
    lam, mu = physical_impedance(lam, mu, k, dimensionless)
    x = k * radius
    limit = truncation if truncation is not None else math.ceil(x) + SEARCH_MARGIN
    orders = np.arange(-limit, limit + 1)
    z = lam - mu * orders**2 / radius**2

    denominator = k * h1vp(orders, x) + z * hankel1(orders, x)
    if np.any(np.abs(denominator) < 1e-12):
        bad = orders[np.abs(denominator) < 1e-12]
        raise ModeResonance(f"vanishing denominator for modes {bad.tolist()}")
    values = -(k * jvp(orders, x) + z * jv(orders, x)) / denominator

    tails = np.maximum(np.abs(values[limit:]), np.abs(values[limit::-1]))
    if truncation is None:
        small = np.flatnonzero((np.arange(limit + 1) >= x) & (tails < TAIL_TOLERANCE))
        if small.size == 0:
            raise SeriesNotConverged(
                f"mode coefficients still above {TAIL_TOLERANCE:g} at order {limit}"
            )
        keep = int(small[0])
        orders = orders[limit - keep : limit + keep + 1]
        values = values[limit - keep : limit + keep + 1]
    elif tails[-1] > TAIL_TOLERANCE:
        logger.warning(f"Mode series truncated at {truncation} with tail {tails[-1]:.2e}")
    return ModeCoefficients(orders, values, k, radius, lam, mu)


def circle_series(
    radius: float,
    lam: complex,
    mu: complex,
    k: float,
    incident_angle: float = 0.0,
    samples: int = 64,
    truncation: Optional[int] = None,
    dimensionless: bool = True,
) -> tuple[ModeCoefficients, FarField]:
    """Mode coefficients and far field of a disk under one plane wave."""
    coefficients = mode_coefficients(radius, lam, mu, k, truncation, dimensionless)
    return coefficients, coefficients.far_field(incident_angle, samples)


def oracle_farfield_compare(computed: FarField, reference: FarField) -> float:
    """Relative discrete ``L2`` difference of two far-field patterns."""
    if len(computed) != len(reference):
        raise ValueError("far fields have different sample counts")
    return (computed - reference).norm() / reference.norm()


def oracle_cost(
    radius: float,
    lam: complex,
    mu: complex,
    k: float,
    angles: list[float],
    data: list[FarField],
    dimensionless: bool = True,
) -> float:
    """Least-squares misfit of disk far fields against data."""
    coefficients = mode_coefficients(radius, lam, mu, k, dimensionless=dimensionless)
    total = 0.0
    for angle, observed in zip(angles, data):
        residual = coefficients.far_field(angle, len(observed)) - observed
        total += 0.5 * residual.norm() ** 2
    return total


class ModeResonance(Exception):
    """Raised when a disk mode is resonant for the given impedances."""

    pass


class SeriesNotConverged(Exception):
    """Raised when the mode coefficients do not decay within the search window."""

    pass
