"""
Validate command handler.
"""

import argparse
import logging

from cli.config import output_directory
from gibc.models.configs import RunConfig
from gibc.services.validation import run_validation

logger = logging.getLogger(__name__)


def register(
    subparsers: argparse._SubParsersAction, parents: list[argparse.ArgumentParser]  # type: ignore[type-arg]
) -> None:
    parser = subparsers.add_parser(
        "validate", parents=parents, help="Oracle, reciprocity and gradient consistency checks"
    )
    parser.set_defaults(handler=handle)


def handle(config: RunConfig, args: argparse.Namespace) -> int:
    """Write ``validation.json``; exit code 1 if any check fails."""
    report = run_validation(config)
    output_directory(config, args.out).write_report(report)
    failed = [check.name for check in report.checks if not check.passed]
    if failed:
        logger.error(f"Validation failed: {', '.join(failed)}")
        return 1
    logger.info(f"All {len(report.checks)} validation checks passed")
    return 0
