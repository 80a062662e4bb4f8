"""
Oracle command handler.
"""

import argparse
import logging

from cli.config import ConfigError, output_directory
from gibc.forward.farfield import ObservationSet, far_fields
from gibc.forward.solver import ScatterProblem
from gibc.meshing.annulus import triangulate
from gibc.models.configs import RunConfig
from gibc.models.results import ValidationReport
from gibc.oracle.circle import mode_coefficients, oracle_farfield_compare
from gibc.services.builders import build_incidents, build_model

logger = logging.getLogger(__name__)

TOLERANCE = 1e-2


def register(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]  # type: ignore[type-arg]
) -> None:
    parser = subparsers.add_parser(
        "oracle", parents=parents, help="Analytic disk far fields and their comparison with the solver"
    )
    parser.set_defaults(handler=handle)


def handle(config: RunConfig, args: argparse.Namespace) -> int:
    """
    Write the series far fields of a disk with constant impedances and the
    relative error of the finite-element far fields against them.
    """
    truth = config.truth
    if truth.geometry.kind != "circle" or truth.geometry.center != (0.0, 0.0):
        raise ConfigError("the oracle needs a centred circle as true geometry")
    if truth.impedance.path or truth.impedance.lam.harmonics or truth.impedance.mu.harmonics:
        raise ConfigError("the oracle needs constant impedances")

    scatter = config.scatter
    lam, mu = truth.impedance.lam.offset.value, truth.impedance.mu.offset.value
    coefficients = mode_coefficients(
        truth.geometry.radius, lam, mu, scatter.wavenumber,
        dimensionless=scatter.dimensionless_impedance,
    )
    samples = config.incidence.observations
    reference = ObservationSet(
        [coefficients.far_field(angle, samples) for angle in config.incidence.angles],
        0.0,
        config.seed,
    )

    curve, impedance = build_model(truth, config)
    mesh = triangulate(curve, scatter.radius, config.mesh.h, config.mesh.min_angle)
    problem = ScatterProblem(scatter, curve, impedance, mesh)
    computed = far_fields(problem.solve_many(build_incidents(config), args.threads), samples)

    report = ValidationReport()
    for j, (fem, exact) in enumerate(zip(computed, reference)):
        error = oracle_farfield_compare(fem, exact)
        report.add(
            f"far_field_{j}", error, TOLERANCE, error < TOLERANCE,
            f"incident angle {exact.incident_angle!r}",
        )
        logger.info(f"Incident {j}: relative far-field error {error:.3e}")
    logger.info(f"Mode series unitarity defect {coefficients.unitarity_defect():.3e}")

    run_dir = output_directory(config, args.out)
    run_dir.write_far_fields("oracle.csv", reference)
    run_dir.write_far_fields("far_field.csv", ObservationSet(computed, 0.0, config.seed))
    run_dir.write_report(report, "comparison.json")
    return 0
