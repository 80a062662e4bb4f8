"""
Invert command handler.
"""

import argparse
import logging
import math
from pathlib import Path

from cli.config import ConfigError, output_directory
from gibc.inversion.driver import run_inversion
from gibc.models.configs import RunConfig
from gibc.services.builders import build_model
from gibc.storage.csv_io import FormatError, read_far_fields

logger = logging.getLogger(__name__)


def register(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]  # type: ignore[type-arg]
) -> None:
    parser = subparsers.add_parser(
        "invert", parents=parents, help="Reconstruct the obstacle from far-field data"
    )
    parser.add_argument("--data", type=Path, required=True, help="Far-field CSV to invert")
    parser.add_argument(
        "--dump-gradients", action="store_true", help="Write nodal gradients every iteration"
    )
    parser.set_defaults(handler=handle)


def handle(config: RunConfig, args: argparse.Namespace) -> int:
    """Run the descent from the initial model and write history, snapshots and summary."""
    if not args.data.is_file():
        raise ConfigError(f"data file not found: {args.data}")
    try:
        data = read_far_fields(args.data)
    except FormatError as exc:
        raise ConfigError(str(exc)) from exc
    if not math.isclose(data.k, config.scatter.wavenumber):
        raise ConfigError(
            f"data wavenumber {data.k} differs from configured {config.scatter.wavenumber}"
        )

    active = config.inversion.components if "impedance" in config.inversion.sweeps else []
    curve, impedance = build_model(config.initial, config, active, args.base_dir)

    run_dir = output_directory(config, args.out)
    history = run_inversion(
        config, data, curve, impedance, run_dir, args.threads, args.dump_gradients
    )
    summary = history.summary()
    logger.info(
        f"Final Error {summary.final_error:.4%} after {summary.iterations} iterations "
        f"({summary.stop_reason})"
    )
    return 0
