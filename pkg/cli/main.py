"""
Command-line entry point.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from cli.config import ConfigError, apply_overrides, load_config
from cli.handlers import forward, invert, oracle, synthesize, validate
from cli.recipes import RECIPES
from gibc.config import get_settings

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gibc",
        description="Scattering by obstacles with generalized impedance boundary conditions",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--recipe", choices=sorted(RECIPES), help="Preset experiment")
    common.add_argument("--out", type=Path, help="Run directory")
    common.add_argument("--seed", type=int, help="Overrides the configured seed")
    common.add_argument("--threads", type=int, help="Concurrent incident fields per batch")
    common.add_argument("--log-level", help="Overrides GIBC_LOG_LEVEL")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in (forward, oracle, synthesize, invert, validate):
        module.register(subparsers, [common])
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    """
    Parse arguments and dispatch to the subcommand handler.

    Returns:
        0 on success, 1 when validation fails, 2 on configuration errors.
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format=settings.log_format,
        stream=sys.stdout,
    )

    args.threads = args.threads or settings.threads
    args.base_dir = args.config.parent if args.config is not None else None
    try:
        config = load_config(args.config, args.recipe)
        config = apply_overrides(config, args.seed)
        return int(args.handler(config, args))
    except (ConfigError, ValidationError, FileNotFoundError) as exc:
        logger.error(f"Configuration error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(run())
