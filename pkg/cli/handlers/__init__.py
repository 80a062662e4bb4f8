"""
Subcommand handlers.

Each module exposes ``register(subparsers, parents)``, which adds its parser and sets
``handler`` to a function ``(config, args) -> exit code``.
"""

from cli.handlers import forward, invert, oracle, synthesize, validate

__all__ = ["forward", "invert", "oracle", "synthesize", "validate"]
