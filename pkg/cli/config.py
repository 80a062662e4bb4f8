"""
Loading run configurations from JSON files and recipes.
"""

import logging
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from cli.recipes import RECIPES
from gibc.config import get_settings
from gibc.models.configs import RunConfig
from gibc.storage.runs import RunDirectory

logger = logging.getLogger(__name__)


def load_config(path: Optional[Path] = None, recipe: Optional[str] = None) -> RunConfig:
    """
    Build the run configuration.

    A recipe gives the starting point and a JSON file is merged over it, so a
    file may override single fields of a recipe.

    Raises:
        ConfigError: If the file is missing, the recipe is unknown or the
            document does not validate.
    """
    if recipe is not None:
        if recipe not in RECIPES:
            raise ConfigError(f"unknown recipe '{recipe}', choose from {sorted(RECIPES)}")
        base = RECIPES[recipe]()
    else:
        base = RunConfig()
    if path is None:
        return base

    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        overrides = RunConfig.model_validate_json(path.read_text()).model_dump(exclude_unset=True)
        config = RunConfig.model_validate(_merge(base.model_dump(), overrides))
    except ValidationError as exc:
        raise ConfigError(f"invalid config {path}:\n{exc}") from exc
    logger.info(f"Loaded config {path}" + (f" over recipe {recipe}" if recipe else ""))
    return config


def apply_overrides(config: RunConfig, seed: Optional[int] = None) -> RunConfig:
    if seed is None:
        return config
    return config.model_copy(update={"seed": seed})


def output_directory(config: RunConfig, out: Optional[Path] = None) -> RunDirectory:
    """Run directory from ``--out`` or the configured output root, created and holding the config."""
    root = out if out is not None else get_settings().output_dir / config.name
    run_dir = RunDirectory(root).create()
    run_dir.write_config(config)
    return run_dir


def _merge(base: dict, overrides: dict) -> dict:  # type: ignore[type-arg]
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigError(Exception):
    """Raised when the run configuration cannot be loaded."""

    pass
