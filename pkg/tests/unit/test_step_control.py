"""
Tests for step-size control of the descent driver.
"""

from types import SimpleNamespace

import pytest

from gibc.inversion.driver import accept_or_backtrack
from gibc.inversion.state import DescentState, StepControl
from gibc.models.configs import InversionConfig


def _state(cost: float, control: StepControl) -> DescentState:
    return DescentState(SimpleNamespace(cost=cost), {"shape": control})  # type: ignore[arg-type]


class TestStepControl:
    def test_grow_and_shrink(self):
        control = StepControl(1.0, {"tau": 0.1, "nu": 0.2})
        control.grow(1.5, 1.2)
        assert control.alpha == pytest.approx(1.5)
        assert control.eta["nu"] == pytest.approx(0.2 / 1.2)
        control.shrink(2.0, 1.2)
        assert control.alpha == pytest.approx(0.75)
        assert control.eta["nu"] == pytest.approx(0.2)

    def test_exhausted_below_minimum(self):
        control = StepControl(1.5, {}, alpha_min_ratio=1e-6)
        for _ in range(19):
            control.shrink(2.0, 1.2)
        assert not control.exhausted
        control.shrink(2.0, 1.2)
        assert control.exhausted

    def test_rejects_non_positive_alpha(self):
        with pytest.raises(ValueError):
            StepControl(0.0, {})


class TestAcceptOrBacktrack:
    config = InversionConfig()

    def test_lower_cost_is_accepted(self):
        control = StepControl(1.0, {"tau": 1.0, "nu": 1.0})
        state = _state(2.0, control)
        trial = SimpleNamespace(cost=1.0)
        new_state, accepted = accept_or_backtrack(state, trial, "shape", self.config)  # type: ignore[arg-type]
        assert accepted
        assert new_state.evaluation is trial
        assert control.alpha == pytest.approx(self.config.rho_up)

    def test_higher_cost_is_rejected(self):
        control = StepControl(1.0, {"tau": 1.0, "nu": 1.0})
        state = _state(2.0, control)
        new_state, accepted = accept_or_backtrack(
            state, SimpleNamespace(cost=3.0), "shape", self.config  # type: ignore[arg-type]
        )
        assert not accepted
        assert new_state is state
        assert control.alpha == pytest.approx(1.0 / self.config.rho_down)
        assert control.eta["tau"] == pytest.approx(self.config.rho_eta)

    def test_failed_trial_is_rejected(self):
        control = StepControl(1.0, {"tau": 1.0, "nu": 1.0})
        state = _state(2.0, control)
        _, accepted = accept_or_backtrack(state, None, "shape", self.config)
        assert not accepted

    def test_equal_cost_is_rejected(self):
        control = StepControl(1.0, {"tau": 1.0, "nu": 1.0})
        _, accepted = accept_or_backtrack(
            _state(2.0, control), SimpleNamespace(cost=2.0), "shape", self.config  # type: ignore[arg-type]
        )
        assert not accepted
