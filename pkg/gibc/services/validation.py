"""
Accuracy and consistency checks of the solver and the gradients.
"""

import logging
import math
from typing import Optional

import numpy as np

from gibc.fields.plane import PlaneWave
from gibc.forward.farfield import (
    ObservationSet,
    far_field,
    far_field_from_circle,
    mixed_reciprocity_residual,
)
from gibc.forward.solver import ScatterProblem
from gibc.geometry.curve import BoundaryCurve, circle, curve_fields, node_count, polar_curve
from gibc.geometry.perturbation import Perturbation, apply_perturbation
from gibc.gradients.adjoint import solve_adjoints
from gibc.gradients.impedance import impedance_gradient
from gibc.gradients.shape import apply_B_eps, nodal_trace, shape_density_loads, shape_gradient
from gibc.inversion.cost import evaluate_model
from gibc.meshing.annulus import morph_mesh, triangulate
from gibc.models.configs import RunConfig
from gibc.models.results import ValidationReport
from gibc.oracle.circle import circle_series, mode_coefficients, oracle_cost, oracle_farfield_compare
from gibc.surface.calculus import BoundaryField
from gibc.surface.impedance import ImpedanceComponent, ImpedanceField
from gibc.surface.space import BoundarySpace

logger = logging.getLogger(__name__)

TAYLOR_STEPS = (1e-2, 5e-3, 2.5e-3, 1.25e-3)
SHAPE_STEPS = (2e-2, 1e-2, 5e-3)
SHAPE_TAYLOR_STEPS = (4e-2, 2e-2, 1e-2)


def circle_parameters(config: RunConfig) -> tuple[float, complex, complex]:
    """Radius and constant impedances of the disk used by the checks."""
    geometry = config.truth.geometry
    radius = geometry.radius if geometry.kind == "circle" else 0.3
    impedance = config.truth.impedance
    return radius, impedance.lam.offset.value, impedance.mu.offset.value


def disk_model(config: RunConfig, radius: float, lam: complex, mu: complex) -> tuple[BoundaryCurve, ImpedanceField]:
    curve = circle(radius, node_count(2.0 * math.pi * radius, config.mesh.spacing))
    return curve, ImpedanceField.constant(len(curve), lam, mu)


def trefoil(config: RunConfig) -> BoundaryCurve:
    radius = lambda t: 0.3 + 0.08 * np.cos(3.0 * t)  # noqa: E731
    rough = polar_curve(radius, 256)
    return polar_curve(radius, node_count(rough.perimeter, config.mesh.spacing))


def oracle_errors(config: RunConfig) -> tuple[float, float]:
    """
    Far-field error against the disk series, and the gap between the two far-field routes.
    """
    scatter = config.scatter
    radius, lam, mu = circle_parameters(config)
    curve, impedance = disk_model(config, radius, lam, mu)
    mesh = triangulate(curve, scatter.radius, config.mesh.h, config.mesh.min_angle)
    problem = ScatterProblem(scatter, curve, impedance, mesh)
    angle = config.incidence.angles[0]
    solution = problem.solve(PlaneWave(scatter.wavenumber, angle))

    samples = config.incidence.observations
    computed = far_field(solution, samples)
    _, reference = circle_series(
        radius, lam, mu, scatter.wavenumber, angle, samples,
        dimensionless=scatter.dimensionless_impedance,
    )
    error = oracle_farfield_compare(computed, reference)
    gap = oracle_farfield_compare(far_field_from_circle(solution, samples), computed)
    return error, gap


def reciprocity_residual(
    config: RunConfig, curve: BoundaryCurve, impedance: ImpedanceField,
    angle: float = 0.7, source: tuple[float, float] = (0.6, 0.3),
) -> float:
    scatter = config.scatter
    mesh = triangulate(curve, scatter.radius, config.mesh.h, config.mesh.min_angle)
    problem = ScatterProblem(scatter, curve, impedance, mesh)
    return mixed_reciprocity_residual(problem, angle, source)


def oracle_data(config: RunConfig, radius: float, lam: complex, mu: complex) -> ObservationSet:
    """Disk far fields for every configured incident direction."""
    scatter = config.scatter
    coefficients = mode_coefficients(
        radius, lam, mu, scatter.wavenumber, dimensionless=scatter.dimensionless_impedance
    )
    return ObservationSet(
        [
            coefficients.far_field(angle, config.incidence.observations)
            for angle in config.incidence.angles
        ]
    )


def smooth_direction(
    curve: BoundaryCurve, rng: np.random.Generator, modes: int = 3
) -> np.ndarray:
    """Random low-order trigonometric nodal function with unit maximum."""
    theta = curve.polar_angles()
    values = np.full(len(curve), rng.uniform(0.5, 1.0))
    for m in range(1, modes + 1):
        values += rng.uniform(-0.5, 0.5) * np.cos(m * theta) + rng.uniform(-0.5, 0.5) * np.sin(m * theta)
    return values / np.max(np.abs(values))


def impedance_taylor_slopes(
    config: RunConfig,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    data: ObservationSet,
    rng: np.random.Generator,
    directions: int = 3,
    steps: tuple[float, ...] = TAYLOR_STEPS,
) -> list[float]:
    """
    Observed orders of the first-order Taylor remainder along random impedance directions.

    An exact gradient gives order 2.
    """
    scatter, mesh_config = config.scatter, config.mesh
    mesh = triangulate(curve, scatter.radius, mesh_config.h, mesh_config.min_angle)
    base = evaluate_model(scatter, mesh_config, curve, impedance, data, mesh)
    adjoints = solve_adjoints(base.problem, base.residuals)
    gradient = impedance_gradient(base.problem, base.solutions, adjoints)

    slopes = []
    for _ in range(directions):
        direction = {c: smooth_direction(curve, rng) for c in ImpedanceComponent}
        derivative = gradient.directional(direction)
        remainders = []
        for t in steps:
            moved = impedance
            for component, h in direction.items():
                moved = moved.with_component(component, impedance.component(component) + t * h)
            value = evaluate_model(scatter, mesh_config, curve, moved, data, mesh).cost
            remainders.append(abs(value - base.cost - t * derivative))
        orders = np.log2(np.array(remainders[:-1]) / np.array(remainders[1:]))
        logger.debug(f"Impedance Taylor remainders {remainders}, orders {orders}")
        slopes.append(float(np.mean(orders)))
    return slopes


def shape_taylor_slopes(
    config: RunConfig,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    data: ObservationSet,
    rng: np.random.Generator,
    directions: int = 3,
    steps: tuple[float, ...] = SHAPE_TAYLOR_STEPS,
) -> list[float]:
    """
    Observed orders of the first-order Taylor remainder along random node displacements.

    The mesh follows the curve with fixed connectivity so the discrete cost
    is smooth in the step; remeshing would add jumps of the size of the
    discretization error. Nodal impedances ride along with their nodes.
    """
    scatter, mesh_config = config.scatter, config.mesh
    mesh = triangulate(curve, scatter.radius, mesh_config.h, mesh_config.min_angle)
    base = evaluate_model(scatter, mesh_config, curve, impedance, data, mesh)
    adjoints = solve_adjoints(base.problem, base.residuals)
    gradient = shape_gradient(base.problem, base.solutions, adjoints, base.fields)

    slopes = []
    for _ in range(directions):
        perturbation = Perturbation(
            0.3 * smooth_direction(curve, rng), smooth_direction(curve, rng)
        )
        derivative = gradient.directional(perturbation)
        remainders = []
        for t in steps:
            moved = apply_perturbation(curve, perturbation * t, base.fields)
            value = evaluate_model(
                scatter, mesh_config, moved, impedance, data, morph_mesh(mesh, moved)
            ).cost
            remainders.append(abs(value - base.cost - t * derivative))
        orders = np.log2(np.array(remainders[:-1]) / np.array(remainders[1:]))
        logger.debug(f"Shape Taylor remainders {remainders}, orders {orders}")
        slopes.append(float(np.mean(orders)))
    return slopes


def shape_fd_errors(
    config: RunConfig,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    data: ObservationSet,
    rng: np.random.Generator,
    directions: int = 3,
    steps: tuple[float, ...] = SHAPE_STEPS,
) -> list[float]:
    """
    Relative error of the shape gradient against central differences with remeshing.

    The best step of ``steps`` is reported per direction.
    """
    scatter, mesh_config = config.scatter, config.mesh
    base = evaluate_model(scatter, mesh_config, curve, impedance, data)
    adjoints = solve_adjoints(base.problem, base.residuals)
    gradient = shape_gradient(base.problem, base.solutions, adjoints, base.fields)

    errors = []
    for _ in range(directions):
        perturbation = Perturbation(
            0.3 * smooth_direction(curve, rng), smooth_direction(curve, rng)
        )
        derivative = gradient.directional(perturbation)
        best = math.inf
        for t in steps:
            costs = []
            for sign in (1.0, -1.0):
                moved = apply_perturbation(curve, perturbation * (sign * t), base.fields)
                costs.append(
                    evaluate_model(scatter, mesh_config, moved, impedance, data).cost
                )
            difference = (costs[0] - costs[1]) / (2.0 * t)
            best = min(best, abs(difference - derivative) / abs(derivative))
        errors.append(best)
    return errors


def radius_derivative_error(config: RunConfig, shrink: float = 0.9) -> float:
    """Uniform normal shape derivative on a disk against the series derivative in the radius."""
    scatter = config.scatter
    radius, lam, mu = circle_parameters(config)
    data = oracle_data(config, radius, lam, mu)
    model_radius = shrink * radius
    curve, impedance = disk_model(config, model_radius, lam, mu)

    base = evaluate_model(scatter, config.mesh, curve, impedance, data)
    adjoints = solve_adjoints(base.problem, base.residuals)
    gradient = shape_gradient(base.problem, base.solutions, adjoints, base.fields)
    computed = float(np.sum(gradient.normal))

    delta = 1e-5
    angles = config.incidence.angles
    reference = (
        oracle_cost(model_radius + delta, lam, mu, scatter.wavenumber, angles, data.far_fields,
                    scatter.dimensionless_impedance)
        - oracle_cost(model_radius - delta, lam, mu, scatter.wavenumber, angles, data.far_fields,
                      scatter.dimensionless_impedance)
    ) / (2.0 * delta)
    return abs(computed - reference) / abs(reference)


def impedance_derivative_error(
    config: RunConfig, component: ImpedanceComponent = ImpedanceComponent.RE_MU, shift: float = 0.25
) -> float:
    """Constant-direction impedance derivative on a disk against the series derivative."""
    scatter = config.scatter
    radius, lam, mu = circle_parameters(config)
    data = oracle_data(config, radius, lam, mu)
    curve, impedance = disk_model(config, radius, lam, mu)
    impedance = impedance.with_component(component, impedance.component(component) - shift)

    base = evaluate_model(scatter, config.mesh, curve, impedance, data)
    adjoints = solve_adjoints(base.problem, base.residuals)
    gradient = impedance_gradient(base.problem, base.solutions, adjoints)
    computed = float(np.sum(gradient[component]))

    unit = {
        ImpedanceComponent.RE_LAMBDA: (1.0, 0.0),
        ImpedanceComponent.IM_LAMBDA: (1.0j, 0.0),
        ImpedanceComponent.RE_MU: (0.0, 1.0),
        ImpedanceComponent.IM_MU: (0.0, 1.0j),
    }[component]
    lam0, mu0 = complex(impedance.lam[0]), complex(impedance.mu[0])
    delta = 1e-6
    angles = config.incidence.angles

    def disk_cost(t: float) -> float:
        return oracle_cost(radius, lam0 + t * unit[0], mu0 + t * unit[1], scatter.wavenumber,
                           angles, data.far_fields, scatter.dimensionless_impedance)

    reference = (disk_cost(delta) - disk_cost(-delta)) / (2.0 * delta)
    return abs(computed - reference) / abs(reference)


def tangential_ratio(config: RunConfig) -> float:
    """``|g_tau| / |g_nu|`` on the trefoil with constant impedances."""
    scatter = config.scatter
    radius, lam, mu = circle_parameters(config)
    data = oracle_data(config, radius, lam, mu)
    curve = trefoil(config)
    impedance = ImpedanceField.constant(len(curve), lam, mu)
    base = evaluate_model(scatter, config.mesh, curve, impedance, data)
    adjoints = solve_adjoints(base.problem, base.residuals)
    gradient = shape_gradient(base.problem, base.solutions, adjoints, base.fields)
    return float(np.linalg.norm(gradient.tangential) / np.linalg.norm(gradient.normal))


def weak_strong_error(n: int, k: float = 6.0, radius: float = 0.3) -> float:
    """
    Relative gap between the weak shape functional and the trapezoid pairing of
    the strong operator, for smooth fields on a disk with ``n`` nodes.
    """
    curve = circle(radius, n)
    fields = curve_fields(curve)
    theta = curve.polar_angles()
    lam = 0.5 + 0.2 * np.sin(theta) + 0.3j
    mu = 0.8 + 0.1 * np.cos(theta)
    u = np.exp(1j * theta) + 0.5 * np.exp(2j * theta)
    g = np.exp(-1j * theta) + 0.3 * np.exp(-2j * theta) + 0.2
    perturbation = Perturbation(0.2 * np.sin(theta), 1.0 + 0.3 * np.cos(theta))
    impedance = ImpedanceField(lam, mu)

    strong_u = apply_B_eps(BoundaryField(curve, u), perturbation, impedance, k, fields)
    strong = fields.integrate(g * strong_u.values)

    space = BoundarySpace(curve, order=1)
    normal_load, tangential_load = shape_density_loads(
        space, fields, k, lam, mu,
        nodal_trace(space, lam, mu, u),
        nodal_trace(space, lam, mu, g),
    )
    weak = np.dot(normal_load, perturbation.normal) + np.dot(tangential_load, perturbation.tangential)
    return float(abs(weak - strong) / abs(strong))


def run_validation(config: RunConfig, seed: Optional[int] = None) -> ValidationReport:
    """
    Run every check and collect a report.

    Checks cover forward accuracy, reciprocity, gradient consistency and the
    weak/strong shape operator agreement.
    """
    rng = np.random.default_rng(config.seed if seed is None else seed)
    report = ValidationReport()

    error, gap = oracle_errors(config)
    report.add("oracle_far_field", error, 1e-2, error < 1e-2, "relative L2 error against the disk series")
    report.add("far_field_routes", gap, 1e-2, gap < 1e-2, "boundary integral against DtN circle series")

    radius, lam, mu = circle_parameters(config)
    disk, disk_impedance = disk_model(config, radius, lam, mu)
    residual = reciprocity_residual(config, disk, disk_impedance)
    report.add("reciprocity_disk", residual, 2e-2, residual < 2e-2)
    curve = trefoil(config)
    trefoil_impedance = ImpedanceField.constant(len(curve), lam, mu)
    residual = reciprocity_residual(config, curve, trefoil_impedance)
    report.add("reciprocity_trefoil", residual, 5e-2, residual < 5e-2)

    data = oracle_data(config, radius, lam, mu)
    for label, model in (("disk", disk), ("trefoil", curve)):
        theta = model.polar_angles()
        variable = ImpedanceField(
            (lam + 0.2j) * (1.0 + 0.2 * np.sin(theta)), (mu - 0.2) * (1.0 + 0.2 * np.cos(theta))
        )
        slopes = impedance_taylor_slopes(config, model, variable, data, rng)
        worst = max(slopes, key=lambda s: abs(s - 2.0))
        report.add(
            f"impedance_taylor_order_{label}", worst, 0.2, abs(worst - 2.0) <= 0.2,
            f"orders {slopes}",
        )
        slopes = shape_taylor_slopes(config, model, variable, data, rng)
        worst = max(slopes, key=lambda s: abs(s - 2.0))
        report.add(
            f"shape_taylor_order_{label}", worst, 0.2, abs(worst - 2.0) <= 0.2,
            f"orders {slopes}",
        )
        errors = shape_fd_errors(config, model, variable, data, rng)
        report.add(
            f"shape_finite_difference_{label}", max(errors), 5e-2, max(errors) < 5e-2,
            f"errors {errors}",
        )

    value = radius_derivative_error(config)
    report.add("shape_gradient_disk", value, 2e-2, value < 2e-2)
    value = impedance_derivative_error(config)
    report.add("impedance_gradient_disk", value, 2e-2, value < 2e-2)

    ratio = tangential_ratio(config)
    report.add("tangential_constant_impedance", ratio, 1e-3, ratio <= 1e-3)

    coarse, fine = weak_strong_error(64), weak_strong_error(128)
    rate = coarse / fine
    report.add("weak_strong_rate", rate, 3.0, rate > 3.0, f"errors {coarse:.3e}, {fine:.3e}")

    for check in report.checks:
        level = logging.INFO if check.passed else logging.ERROR
        logger.log(level, f"{check.name}: {check.value:.4e} (tolerance {check.tolerance:g}) "
                          f"{'pass' if check.passed else 'FAIL'}")
    return report
