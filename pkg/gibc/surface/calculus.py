"""
Nodal calculus on closed polygonal curves.
"""

import logging

import numpy as np
from scipy.sparse import csc_matrix
from scipy.sparse.linalg import splu

from gibc.geometry.curve import BoundaryCurve
from gibc.surface.impedance import ImpedanceField
from gibc.surface.space import BoundarySpace

logger = logging.getLogger(__name__)


class BoundaryField:
    """Complex value per curve node."""

    __slots__ = ("curve", "values")

    def __init__(self, curve: BoundaryCurve, values: np.ndarray):
        values = np.asarray(values, dtype=complex)
        if values.shape != (len(curve),):
            raise ValueError(f"expected {len(curve)} nodal values, got shape {values.shape}")
        self.curve = curve
        self.values = values

    def __add__(self, other: "BoundaryField") -> "BoundaryField":
        return BoundaryField(self.curve, self.values + other.values)

    def __sub__(self, other: "BoundaryField") -> "BoundaryField":
        return BoundaryField(self.curve, self.values - other.values)

    def __mul__(self, other: "BoundaryField | np.ndarray | complex") -> "BoundaryField":
        factor = other.values if isinstance(other, BoundaryField) else other
        return BoundaryField(self.curve, self.values * factor)

    __rmul__ = __mul__


def d_ds(field: BoundaryField) -> BoundaryField:
    """Second-order periodic central difference in arclength."""
    lengths = field.curve.edge_lengths
    f = field.values
    return BoundaryField(
        field.curve, (np.roll(f, -1) - np.roll(f, 1)) / (lengths + np.roll(lengths, 1))
    )


def flux_divergence(
    curve: BoundaryCurve, coefficient: np.ndarray, values: np.ndarray
) -> np.ndarray:
    """
    ``d/ds (c du/ds)`` in conservative form.

    The coefficient is averaged to edges and fluxes are differenced over the
    dual cell of each node.
    """
    lengths = curve.edge_lengths
    c_edge = 0.5 * (coefficient + np.roll(coefficient, -1))
    flux = c_edge * (np.roll(values, -1) - values) / lengths
    dual = 0.5 * (lengths + np.roll(lengths, 1))
    return (flux - np.roll(flux, 1)) / dual


def apply_L(impedance: ImpedanceField, field: BoundaryField, k: float = 1.0) -> BoundaryField:
    """
    Strong tangential operator ``d/ds (mu du/ds) + lambda u``.

    ``k`` converts dimensionless impedances; pass 1 for physical values.
    """
    lam, mu = _physical(impedance, k)
    curve = field.curve
    return BoundaryField(curve, flux_divergence(curve, mu, field.values) + lam * field.values)


def weak_L_pairing(
    impedance: ImpedanceField, u: BoundaryField, v: BoundaryField, k: float = 1.0
) -> complex:
    """
    Bilinear form ``int (-mu u' v' + lambda u v) ds``.

    Derivatives are edge differences and the zeroth-order term uses the
    trapezoid rule, so the pairing equals the trapezoid sum of ``(L u) v``
    exactly and is symmetric.
    """
    lam, mu = _physical(impedance, k)
    curve = u.curve
    lengths = curve.edge_lengths
    mu_edge = 0.5 * (mu + np.roll(mu, -1))
    du = np.roll(u.values, -1) - u.values
    dv = np.roll(v.values, -1) - v.values
    dual = 0.5 * (lengths + np.roll(lengths, 1))
    stiffness = np.sum(mu_edge * (du * dv) / lengths)
    mass = np.sum(dual * lam * (u.values * v.values))
    return complex(mass - stiffness)


def h1_smooth(curve: BoundaryCurve, eta: float, load: np.ndarray) -> np.ndarray:
    """
    Riesz representative of a load in the weighted H1 inner product.

    Solves ``(eta K + M) e = load`` with consistent P1 matrices on the curve,
    so a load assembled from ``f`` returns ``f`` smoothed at scale
    ``sqrt(eta)``.
    """
    if eta < 0:
        raise ValueError("eta must be non-negative")
    space = BoundarySpace(curve, order=1)
    ones = np.ones(space.weights.shape)
    system = eta * space.assemble_matrix(ones, "stiffness") + space.assemble_matrix(ones, "mass")
    lu = splu(csc_matrix(system))
    load = np.asarray(load)
    if np.iscomplexobj(load):
        return lu.solve(np.ascontiguousarray(load.real)) + 1j * lu.solve(
            np.ascontiguousarray(load.imag)
        )
    return lu.solve(np.ascontiguousarray(load, dtype=float))


def smoothing_weight(curve: BoundaryCurve, order: float) -> float:
    """Weight ``eta`` that halves the Fourier mode ``order`` on the curve."""
    radius = curve.perimeter / (2.0 * np.pi)
    return float((radius / order) ** 2)


def _physical(impedance: ImpedanceField, k: float) -> tuple[np.ndarray, np.ndarray]:
    if k == 1.0:
        return impedance.lam, impedance.mu
    return impedance.scaled(k)
