"""
Boundary perturbations and the node update that applies them.
"""

import logging
from typing import Optional

import numpy as np

from gibc.geometry.curve import BoundaryCurve, CurveFields, SelfIntersection, curve_fields

logger = logging.getLogger(__name__)


class Perturbation:
    """Nodal displacement ``eps_tau * tau + eps_nu * nu`` of a curve."""

    __slots__ = ("tangential", "normal")

    def __init__(self, tangential: np.ndarray, normal: np.ndarray):
        tangential = np.asarray(tangential, dtype=float)
        normal = np.asarray(normal, dtype=float)
        if tangential.shape != normal.shape or tangential.ndim != 1:
            raise ValueError("tangential and normal parts must be 1-d arrays of equal length")
        self.tangential = tangential
        self.normal = normal

    @classmethod
    def zeros(cls, n: int) -> "Perturbation":
        return cls(np.zeros(n), np.zeros(n))

    @classmethod
    def normal_only(cls, normal: np.ndarray) -> "Perturbation":
        normal = np.asarray(normal, dtype=float)
        return cls(np.zeros_like(normal), normal)

    def __len__(self) -> int:
        return int(self.normal.shape[0])

    def __mul__(self, factor: float) -> "Perturbation":
        return Perturbation(factor * self.tangential, factor * self.normal)

    __rmul__ = __mul__

    def __add__(self, other: "Perturbation") -> "Perturbation":
        return Perturbation(self.tangential + other.tangential, self.normal + other.normal)

    @property
    def amplitude(self) -> np.ndarray:
        """Nodal ``|eps_tau| + |eps_nu|``, an upper bound on the displacement length."""
        return np.abs(self.tangential) + np.abs(self.normal)

    def max_amplitude(self) -> float:
        return float(np.max(self.amplitude)) if len(self) else 0.0

    def displacement(self, fields: CurveFields) -> np.ndarray:
        return self.tangential[:, None] * fields.tangent + self.normal[:, None] * fields.normal


def local_feature_size(curve: BoundaryCurve, fields: Optional[CurveFields] = None) -> np.ndarray:
    """
    Nodal local feature size.

    The smaller of the radius of curvature and half the distance to any node
    that is close in the plane but far along the curve (a neck).
    """
    fields = fields or curve_fields(curve)
    abs_k = np.abs(fields.curvature)
    with np.errstate(divide="ignore"):
        radius = np.where(abs_k > 0, 1.0 / abs_k, np.inf)

    nodes = curve.nodes
    dist = np.linalg.norm(nodes[:, None, :] - nodes[None, :, :], axis=2)
    s = fields.arclength
    along = np.abs(s[:, None] - s[None, :])
    along = np.minimum(along, fields.perimeter - along)
    neck = along > 2.0 * dist
    half = np.where(neck, 0.5 * dist, np.inf).min(axis=1)
    return np.minimum(radius, half)


def feature_size(curve: BoundaryCurve, fields: Optional[CurveFields] = None) -> float:
    return float(np.min(local_feature_size(curve, fields)))


def apply_perturbation(
    curve: BoundaryCurve,
    perturbation: Perturbation,
    fields: Optional[CurveFields] = None,
    safety: Optional[float] = None,
) -> BoundaryCurve:
    """
    Move every node by its perturbation.

    Args:
        curve: Curve being updated.
        perturbation: Nodal tangential and normal amplitudes.
        fields: Precomputed curve fields.
        safety: If given, reject steps larger than ``safety`` times the
            feature size.

    Returns:
        The updated curve; node count and order are preserved.

    Raises:
        StepTooLarge: If the step exceeds the safety bound.
        SelfIntersection: If the updated polygon is not simple.
    """
    if len(perturbation) != len(curve):
        raise ValueError(f"perturbation has {len(perturbation)} nodes, curve has {len(curve)}")
    fields = fields or curve_fields(curve)

    if safety is not None:
        bound = safety * feature_size(curve, fields)
        if perturbation.max_amplitude() > bound:
            raise StepTooLarge(
                f"step {perturbation.max_amplitude():.3e} exceeds bound {bound:.3e}"
            )

    moved = curve.nodes + perturbation.displacement(fields)
    try:
        return BoundaryCurve(moved)
    except SelfIntersection:
        logger.debug("Perturbed curve is not simple")
        raise


def transport_impedance(
    values: np.ndarray, old: BoundaryCurve, new: BoundaryCurve
) -> np.ndarray:
    """
    Carry nodal values to an updated curve by node index.

    Raises:
        TransportMismatch: If the node counts differ.
    """
    if len(old) != len(new) or values.shape[0] != len(new):
        raise TransportMismatch(
            f"cannot transport {values.shape[0]} values from {len(old)} to {len(new)} nodes"
        )
    return np.array(values, copy=True)


class StepTooLarge(SelfIntersection):
    """Raised when a perturbation exceeds the feature-size safety bound."""

    pass


class TransportMismatch(Exception):
    """Raised when nodal data cannot be moved between curves index by index."""

    pass
