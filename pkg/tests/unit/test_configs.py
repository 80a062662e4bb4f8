"""
Tests for run configuration models, recipes and builders.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from cli.config import ConfigError, load_config
from cli.recipes import RECIPES
from gibc.models.configs import IncidenceConfig, RunConfig, ScatterConfig
from gibc.services.builders import build_model, evaluate_profile
from gibc.surface.impedance import ImpedanceComponent


def test_default_modes():
    assert ScatterConfig().modes == math.ceil(6.0) + 16


def test_too_few_modes_rejected():
    with pytest.raises(ValidationError):
        ScatterConfig(wavenumber=6.0, radius=1.0, dtn_modes=10)


def test_uniform_incident_angles():
    angles = IncidenceConfig(count=4).angles
    np.testing.assert_allclose(angles, [0.0, math.pi / 2, math.pi, 3 * math.pi / 2])


def test_config_json_round_trip():
    config = RECIPES["trefoil"]()
    assert RunConfig.model_validate_json(config.model_dump_json()) == config


@pytest.mark.parametrize("name", sorted(RECIPES))
def test_recipes_build_valid_models(name):
    config = RECIPES[name]()
    curve, impedance = build_model(config.truth, config)
    assert len(curve) == len(impedance)
    assert curve.max_radius < config.scatter.radius - 2 * config.mesh.h
    initial, _ = build_model(config.initial, config)
    assert initial.max_radius < config.scatter.radius - 2 * config.mesh.h


def test_trefoil_impedance_profile():
    config = RECIPES["trefoil"]()
    theta = np.linspace(0.0, 2.0 * math.pi, 7)
    lam = evaluate_profile(config.truth.impedance.lam, theta)
    mu = evaluate_profile(config.truth.impedance.mu, theta)
    np.testing.assert_allclose(lam, 0.5j * (1.0 + np.sin(theta) ** 2), atol=1e-14)
    np.testing.assert_allclose(mu, 0.5 * (1.0 + np.cos(theta) ** 2), atol=1e-14)


def test_rotated_circle_profile():
    config = RECIPES["rotated-circle"]()
    theta = np.linspace(0.0, 2.0 * math.pi, 7)
    lam = evaluate_profile(config.truth.impedance.lam, theta)
    np.testing.assert_allclose(lam, 0.5 * (1.0 + np.sin(theta + math.pi / 6) ** 2), atol=1e-14)
    assert config.noise.level == 0.05


def test_rotated_circle_starts_from_unrotated_profile():
    config = RECIPES["rotated-circle"]()
    theta = np.linspace(0.0, 2.0 * math.pi, 7)
    initial = evaluate_profile(config.initial.impedance.lam, theta)
    truth = evaluate_profile(config.truth.impedance.lam, theta)
    np.testing.assert_allclose(initial, 0.5 * (1.0 + np.sin(theta) ** 2), atol=1e-14)
    assert np.max(np.abs(initial - truth)) > 0.1
    np.testing.assert_allclose(evaluate_profile(config.initial.impedance.mu, theta), 0.0)


def test_constant_impedance_recovers_lshape_jointly():
    config = RECIPES["constant-impedance"]()
    assert config.truth.geometry == RECIPES["lshape"]().truth.geometry
    assert config.initial.geometry.kind == "circle"
    assert config.inversion.sweeps == ["shape", "impedance"]
    assert config.inversion.constant_impedance
    theta = np.linspace(0.0, 2.0 * math.pi, 5)
    np.testing.assert_allclose(evaluate_profile(config.initial.impedance.lam, theta), 1j)
    np.testing.assert_allclose(evaluate_profile(config.initial.impedance.mu, theta), 1.5)


def test_trefoil_fixes_known_components():
    config = RECIPES["trefoil"]()
    assert config.inversion.components == [
        ImpedanceComponent.IM_LAMBDA,
        ImpedanceComponent.RE_MU,
    ]
    _, impedance = build_model(config.initial, config, active=config.inversion.components)
    assert set(impedance.active) == {ImpedanceComponent.IM_LAMBDA, ImpedanceComponent.RE_MU}


def test_file_overrides_recipe(tmp_path):
    path = tmp_path / "override.json"
    path.write_text('{"noise": {"level": 0.02}}')
    config = load_config(path, "constant-impedance")
    assert config.noise.level == 0.02
    assert config.inversion.constant_impedance


def test_missing_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")


def test_invalid_document_is_config_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"scatter": {"wavenumber": -1}}')
    with pytest.raises(ConfigError):
        load_config(path)
