"""
Tests for calibrated far-field noise.
"""

import numpy as np
import pytest

from gibc.oracle.circle import circle_series
from gibc.services.synthesis import add_noise


@pytest.fixture
def clean():
    return circle_series(0.3, 0.5j, 2.0, 6.0, incident_angle=0.4, samples=64)[1]


def test_zero_level_returns_identical_values(clean, rng):
    noisy = add_noise(clean, 0.0, rng)
    np.testing.assert_array_equal(noisy.values, clean.values)


@pytest.mark.parametrize("level", [0.01, 0.05])
def test_relative_error_equals_level(clean, rng, level):
    noisy = add_noise(clean, level, rng)
    assert (noisy - clean).norm() / clean.norm() == pytest.approx(level, abs=1e-12)


def test_seeds_give_different_noise_of_equal_size(clean):
    first = add_noise(clean, 0.05, np.random.default_rng(1))
    second = add_noise(clean, 0.05, np.random.default_rng(2))
    assert not np.allclose(first.values, second.values)
    assert (first - clean).norm() == pytest.approx((second - clean).norm(), rel=1e-12)


def test_same_seed_reproduces_noise(clean):
    first = add_noise(clean, 0.05, np.random.default_rng(3))
    second = add_noise(clean, 0.05, np.random.default_rng(3))
    np.testing.assert_array_equal(first.values, second.values)


def test_metadata_is_kept(clean, rng):
    noisy = add_noise(clean, 0.05, rng)
    assert noisy.incident_angle == clean.incident_angle
    assert noisy.k == clean.k
