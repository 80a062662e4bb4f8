"""
Forward command handler.
"""

import argparse
import logging

from cli.config import output_directory
from gibc.forward.farfield import ObservationSet, far_fields
from gibc.forward.solver import ScatterProblem
from gibc.meshing.annulus import triangulate
from gibc.models.configs import RunConfig
from gibc.services.builders import build_incidents, build_model

logger = logging.getLogger(__name__)


def register(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]  # type: ignore[type-arg]
) -> None:
    parser = subparsers.add_parser(
        "forward", parents=parents, help="Far fields of the true model"
    )
    parser.add_argument("--mesh", action="store_true", help="Also write the annulus mesh")
    parser.set_defaults(handler=handle)


def handle(config: RunConfig, args: argparse.Namespace) -> int:
    """Solve every incident wave for the true model and write ``far_field.csv``."""
    curve, impedance = build_model(config.truth, config, base_dir=args.base_dir)
    mesh = triangulate(curve, config.scatter.radius, config.mesh.h, config.mesh.min_angle)
    problem = ScatterProblem(config.scatter, curve, impedance, mesh)
    solutions = problem.solve_many(build_incidents(config), threads=args.threads)
    observations = ObservationSet(far_fields(solutions, config.incidence.observations), 0.0, config.seed)

    run_dir = output_directory(config, args.out)
    run_dir.write_model("truth", curve, impedance)
    run_dir.write_far_fields("far_field.csv", observations)
    if args.mesh:
        run_dir.write_mesh(0, mesh)
    logger.info(f"Forward run finished: {len(observations)} far fields in {run_dir.root}")
    return 0
