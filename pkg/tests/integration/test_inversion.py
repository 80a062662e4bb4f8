"""
Descent driver on small disk problems.
"""

import json

import numpy as np
import pytest

from gibc.forward.farfield import ObservationSet
from gibc.geometry.curve import circle
from gibc.inversion.cost import evaluate_model
from gibc.inversion.driver import run_inversion
from gibc.models.configs import IncidenceConfig, InversionConfig
from gibc.services.synthesis import synthesize_data
from gibc.services.validation import oracle_data
from gibc.storage.csv_io import read_history
from gibc.storage.runs import RunDirectory
from gibc.surface.impedance import ImpedanceComponent, ImpedanceField


@pytest.fixture
def small_config(disk_config):
    return disk_config.model_copy(
        update={"incidence": IncidenceConfig(count=2, observations=32)}
    )


def _with_inversion(config, **settings):
    return config.model_copy(update={"inversion": InversionConfig(**settings)})


def test_data_of_the_model_itself_stops_at_once(small_config):
    curve = circle(0.3, 38)
    impedance = ImpedanceField.constant(38, 0.5j, 2.0)
    own = evaluate_model(
        small_config.scatter, small_config.mesh, curve, impedance,
        oracle_data(small_config, 0.3, 0.5j, 2.0),
    )

    history = run_inversion(small_config, ObservationSet(own.far_fields), curve, impedance)

    assert history.final.cost == 0.0
    assert history.final.iteration == 0
    assert history.stop_reason == "target error reached"


def test_target_error_stops_before_first_step(small_config):
    config = _with_inversion(small_config, target_error=1.0)
    data = oracle_data(config, 0.3, 0.5j, 2.0)
    history = run_inversion(config, data, circle(0.3, 38), ImpedanceField.constant(38, 1j, 1.5))
    assert history.stop_reason == "target error reached"
    assert len(history.records) == 1


def test_impedance_descent_lowers_cost(small_config, tmp_path):
    config = _with_inversion(
        small_config, schedule="impedance-only", constant_impedance=True, max_iterations=3
    )
    data = oracle_data(config, 0.3, 0.5j, 2.0)
    run_dir = RunDirectory(tmp_path / "run").create()

    history = run_inversion(
        config, data, circle(0.3, 38), ImpedanceField.constant(38, 1j, 1.5), run_dir
    )

    costs = history.accepted_costs()
    assert len(costs) >= 2
    assert all(b < a for a, b in zip(costs, costs[1:]))
    # constant reconstruction keeps the impedances constant
    assert np.ptp(history.final.impedance.lam.imag) < 1e-12
    assert np.ptp(history.final.impedance.mu.real) < 1e-12

    records = read_history(run_dir.history_path)
    assert len(records) == len(history.records)
    assert (run_dir.root / "snapshots" / "iter_0000_curve.csv").exists()
    assert (run_dir.root / "final" / "impedance.csv").exists()
    summary = json.loads((run_dir.root / "summary.json").read_text())
    assert summary["iterations"] == history.final.iteration


def test_known_components_are_left_alone(small_config):
    config = _with_inversion(
        small_config, schedule="impedance-only", constant_impedance=True, max_iterations=2
    )
    data = oracle_data(config, 0.3, 0.5j, 2.0)
    start = ImpedanceField.constant(
        38, 1j, 2.0, active=[ImpedanceComponent.RE_LAMBDA, ImpedanceComponent.IM_LAMBDA]
    )
    history = run_inversion(config, data, circle(0.3, 38), start)
    np.testing.assert_array_equal(history.final.impedance.mu, start.mu)


def test_shape_descent_grows_small_disk(small_config, tmp_path):
    config = _with_inversion(small_config, schedule="shape-only", max_iterations=2)
    data = oracle_data(config, 0.3, 0.5j, 2.0)
    run_dir = RunDirectory(tmp_path / "shape").create()

    history = run_inversion(
        config, data, circle(0.26, 38), ImpedanceField.constant(38, 0.5j, 2.0), run_dir,
        dump_gradients=True,
    )

    costs = history.accepted_costs()
    assert all(b < a for a, b in zip(costs, costs[1:]))
    if len(costs) > 1:
        radii = np.linalg.norm(history.final.curve.nodes, axis=1)
        assert np.mean(radii) > 0.26
    assert (run_dir.root / "gradients" / "iter_0001.csv").exists()


def test_true_model_with_finer_mesh_data_stops_at_gradient_floor(small_config):
    config = _with_inversion(small_config, gradient_floor=0.1)
    curve = circle(0.3, 38)
    impedance = ImpedanceField.constant(38, 0.5j, 2.0)
    clean, _ = synthesize_data(config, curve, impedance)
    assert config.mesh.data_h < config.mesh.h

    history = run_inversion(config, clean, curve, impedance)

    assert 0.0 < history.records[0].cost
    assert history.records[0].error < 1e-2
    assert history.stop_reason == "gradient below floor"
    assert history.final.iteration <= 3
    assert history.accepted == []


def test_gradient_floor_stops_before_any_trial(small_config):
    config = _with_inversion(small_config, gradient_floor=1e3)
    data = oracle_data(config, 0.3, 0.5j, 2.0)
    history = run_inversion(config, data, circle(0.25, 38), ImpedanceField.constant(38, 1j, 1.5))
    assert history.stop_reason == "gradient below floor"
    assert [r.sweep for r in history.records] == ["initial"]


def test_data_energy_is_sum_of_squared_norms(small_config):
    data = oracle_data(small_config, 0.3, 0.5j, 2.0)
    assert data.energy == pytest.approx(sum(f.norm() ** 2 for f in data))
