"""
Shape derivative of the misfit and the boundary operator behind it.
"""

import logging

import numpy as np

from gibc.forward.solver import BoundaryTrace, ScatterProblem, ScatterSolution
from gibc.geometry.curve import CurveFields, curve_fields
from gibc.geometry.perturbation import Perturbation
from gibc.surface.calculus import BoundaryField, apply_L, d_ds, flux_divergence
from gibc.surface.impedance import ImpedanceField
from gibc.surface.space import BoundarySpace

logger = logging.getLogger(__name__)


class ShapeGradient:
    """Nodal loads of the misfit along normal and tangential node displacements."""

    __slots__ = ("normal", "tangential")

    def __init__(self, normal: np.ndarray, tangential: np.ndarray):
        self.normal = normal
        self.tangential = tangential

    def directional(self, perturbation: Perturbation) -> float:
        return float(
            np.dot(self.normal, perturbation.normal)
            + np.dot(self.tangential, perturbation.tangential)
        )

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.normal**2) + np.sum(self.tangential**2)))


def shape_density_loads(
    space: BoundarySpace,
    fields: CurveFields,
    k: float,
    lam: np.ndarray,
    mu: np.ndarray,
    u: BoundaryTrace,
    g: BoundaryTrace,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Complex nodal loads of ``int G (B_eps u) ds`` for normal and tangential hats.

    In weak form

        int G B_eps u = int eps_nu [(k^2 - kappa lambda) u G - (1 + mu kappa) u' G'
                                    + (L u)(L G)]
                      + int eps_tau [lambda' u G - mu' u' G']

    with ``lambda, mu`` physical nodal impedances interpolated linearly.
    """
    lam_q = space.interpolate_nodal(lam)
    mu_q = space.interpolate_nodal(mu)
    kappa_q = space.interpolate_nodal(fields.curvature)
    ug = u.values * g.values
    dug = u.ds * g.ds

    normal_density = (
        (k**2 - kappa_q * lam_q) * ug - (1.0 + mu_q * kappa_q) * dug + u.tangential * g.tangential
    )
    tangential_density = space.nodal_slope(lam) * ug - space.nodal_slope(mu) * dug
    return space.assemble_nodal_load(normal_density), space.assemble_nodal_load(
        tangential_density
    )


def shape_gradient(
    problem: ScatterProblem,
    solutions: list[ScatterSolution],
    adjoints: list[ScatterSolution],
    fields: CurveFields | None = None,
) -> ShapeGradient:
    """
    Loads of ``F'(D) eps = -Re sum_j int G_j B_eps u_j``.

    Returns:
        Real loads; ``directional`` gives the derivative along a perturbation.
    """
    fields = fields or curve_fields(problem.curve)
    normal = np.zeros(len(problem.curve), dtype=complex)
    tangential = np.zeros(len(problem.curve), dtype=complex)
    for u, g in zip(solutions, adjoints):
        ln, lt = shape_density_loads(
            problem.boundary,
            fields,
            problem.k,
            problem.lam,
            problem.mu,
            u.quadrature_trace(),
            g.quadrature_trace(),
        )
        normal += ln
        tangential += lt
    return ShapeGradient(-normal.real, -tangential.real)


def apply_B_eps(
    u: BoundaryField,
    perturbation: Perturbation,
    impedance: ImpedanceField,
    k: float,
    fields: CurveFields | None = None,
    dimensionless: bool = False,
) -> BoundaryField:
    """
    Nodal boundary operator of the shape derivative.

        B_eps u = eps_nu (k^2 - kappa lambda) u + d_s((1 + mu kappa) eps_nu d_s u)
                  + L(eps_nu L u) + (d_s lambda eps_tau) u + d_s((d_s mu eps_tau) d_s u)

    Args:
        u: Total field on the boundary nodes.
        perturbation: Normal and tangential amplitudes.
        impedance: Nodal impedances.
        k: Wavenumber.
        fields: Precomputed curve fields.
        dimensionless: Whether ``impedance`` holds dimensionless values.
    """
    curve = u.curve
    fields = fields or curve_fields(curve)
    if dimensionless:
        lam, mu = impedance.scaled(k)
        physical = ImpedanceField(lam, mu, impedance.active)
    else:
        physical = impedance
        lam, mu = impedance.lam, impedance.mu

    kappa = fields.curvature
    eps_nu = perturbation.normal
    eps_tau = perturbation.tangential
    values = u.values

    dlam = d_ds(BoundaryField(curve, lam)).values
    dmu = d_ds(BoundaryField(curve, mu)).values
    lu = apply_L(physical, u)

    result = (
        eps_nu * (k**2 - kappa * lam) * values
        + flux_divergence(curve, (1.0 + mu * kappa) * eps_nu, values)
        + apply_L(physical, lu * eps_nu).values
        + dlam * eps_tau * values
        + flux_divergence(curve, dmu * eps_tau, values)
    )
    return BoundaryField(curve, result)


def nodal_trace(
    space: BoundarySpace, lam: np.ndarray, mu: np.ndarray, values: np.ndarray
) -> BoundaryTrace:
    """Quadrature trace of the piecewise-linear interpolant of nodal values."""
    if space.order != 1:
        raise ValueError("nodal traces need a P1 boundary space")
    at_q = space.evaluate(values)
    ds_q = space.evaluate_ds(values)
    load = space.weak_tangential_load(
        at_q, ds_q, space.interpolate_nodal(lam), space.interpolate_nodal(mu)
    )
    return BoundaryTrace(at_q, ds_q, space.evaluate(space.project(load)))
