"""
H1-smoothed descent directions for the shape and the impedances.
"""

import logging

import numpy as np

from gibc.geometry.curve import BoundaryCurve
from gibc.geometry.perturbation import Perturbation
from gibc.gradients.impedance import ImpedanceGradient
from gibc.gradients.shape import ShapeGradient
from gibc.surface.calculus import h1_smooth
from gibc.surface.impedance import ImpedanceComponent, ImpedanceField

logger = logging.getLogger(__name__)


def shape_step(
    curve: BoundaryCurve,
    gradient: ShapeGradient,
    alpha: float,
    eta_tau: float,
    eta_nu: float,
) -> Perturbation:
    """
    Smoothed steepest-descent perturbation.

    Solves ``eta ∫ e' phi' + ∫ e phi = -alpha F'(D)(phi n)`` separately for the
    tangential and normal parts.
    """
    tangential = h1_smooth(curve, eta_tau, -alpha * gradient.tangential)
    normal = h1_smooth(curve, eta_nu, -alpha * gradient.normal)
    return Perturbation(np.real(tangential), np.real(normal))


def impedance_increments(
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    gradient: ImpedanceGradient,
    alpha: float,
    eta_lambda: float,
    eta_mu: float,
    constant: bool = False,
) -> dict[ImpedanceComponent, np.ndarray]:
    """
    Increments of the active impedance components.

    In constant mode each component moves by the same scalar, the gradient of
    the misfit along the constant direction divided by the perimeter.
    """
    increments: dict[ImpedanceComponent, np.ndarray] = {}
    for component in ImpedanceComponent:
        if component not in impedance.active:
            continue
        load = gradient[component]
        if constant:
            delta = np.full(len(curve), -alpha * np.sum(load) / curve.perimeter)
        else:
            eta = eta_lambda if component.is_lambda else eta_mu
            delta = np.real(h1_smooth(curve, eta, -alpha * load))
        increments[component] = delta
    return increments


def impedance_step(
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    gradient: ImpedanceGradient,
    alpha: float,
    eta_lambda: float,
    eta_mu: float,
    constant: bool = False,
    floor: float = 1e-3,
) -> ImpedanceField:
    """Updated and projected impedances."""
    updated = impedance
    increments = impedance_increments(
        curve, impedance, gradient, alpha, eta_lambda, eta_mu, constant
    )
    for component, delta in increments.items():
        updated = updated.with_component(component, impedance.component(component) + delta)
    projected = updated.project(floor)
    if not np.array_equal(projected.lam, updated.lam) or not np.array_equal(
        projected.mu, updated.mu
    ):
        logger.warning("Impedance step projected back onto the admissible set")
    return projected
