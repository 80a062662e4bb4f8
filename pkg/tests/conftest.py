"""
Shared fixtures.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from gibc.models.configs import (
    GeometrySpec,
    ImpedanceProfile,
    ImpedanceSpec,
    IncidenceConfig,
    ModelSpec,
    RunConfig,
)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def disk_config() -> RunConfig:
    """Disk of radius 0.3 with (lambda, mu) = (0.5i, 2) and four incident waves."""
    return RunConfig(
        name="disk",
        truth=ModelSpec(
            geometry=GeometrySpec(kind="circle", radius=0.3),
            impedance=ImpedanceSpec(
                lam=ImpedanceProfile.constant(0.5j), mu=ImpedanceProfile.constant(2.0)
            ),
        ),
        incidence=IncidenceConfig(count=4, observations=64),
    )


@pytest.fixture
def config_file(tmp_path: Path, disk_config: RunConfig) -> Path:
    """Small disk configuration written as JSON."""
    document = json.loads(disk_config.model_dump_json())
    document["incidence"] = {"count": 2, "observations": 32}
    path = tmp_path / "config.json"
    path.write_text(json.dumps(document))
    return path
