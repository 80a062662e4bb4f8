"""
Synthesize command handler.
"""

import argparse
import logging

from cli.config import output_directory
from gibc.models.configs import RunConfig
from gibc.services.builders import build_model
from gibc.services.synthesis import synthesize_data

logger = logging.getLogger(__name__)


def register(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]  # type: ignore[type-arg]
) -> None:
    parser = subparsers.add_parser(
        "synthesize", parents=parents, help="Noisy far-field data of the true model"
    )
    parser.set_defaults(handler=handle)


def handle(config: RunConfig, args: argparse.Namespace) -> int:
    """Write ``data.csv`` (noisy), ``clean.csv`` and the true model snapshot."""
    curve, impedance = build_model(config.truth, config, base_dir=args.base_dir)
    clean, noisy = synthesize_data(config, curve, impedance, threads=args.threads)

    run_dir = output_directory(config, args.out)
    run_dir.write_model("truth", curve, impedance)
    run_dir.write_far_fields("clean.csv", clean)
    run_dir.write_far_fields(run_dir.data_path.name, noisy)
    logger.info(
        f"Synthesized {len(noisy)} far fields with {config.noise.level:.1%} noise "
        f"(seed {noisy.seed}) in {run_dir.root}"
    )
    return 0
