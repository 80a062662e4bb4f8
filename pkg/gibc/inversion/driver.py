"""
Alternating steepest-descent reconstruction driver.
"""

import logging
from typing import Optional

import numpy as np

from gibc.forward.farfield import ObservationSet
from gibc.forward.solver import SolveFailure
from gibc.geometry.curve import BoundaryCurve, SelfIntersection, resample, resample_field
from gibc.geometry.perturbation import (
    apply_perturbation,
    feature_size,
    transport_impedance,
)
from gibc.gradients.adjoint import solve_adjoints
from gibc.gradients.impedance import ImpedanceGradient, impedance_gradient
from gibc.gradients.shape import ShapeGradient, shape_gradient
from gibc.inversion.cost import ModelEvaluation, evaluate_model
from gibc.inversion.state import (
    DescentState,
    InversionHistory,
    StepControl,
    Sweep,
    active_components,
)
from gibc.inversion.steps import impedance_increments, impedance_step, shape_step
from gibc.meshing.annulus import ClearanceViolation, QualityFailure, remesh_after_update
from gibc.models.configs import InversionConfig, RunConfig
from gibc.storage.runs import RunDirectory
from gibc.surface.calculus import smoothing_weight
from gibc.surface.impedance import ImpedanceField

logger = logging.getLogger(__name__)

TRIAL_FAILURES = (SelfIntersection, ClearanceViolation, QualityFailure, SolveFailure)


def accept_or_backtrack(
    state: DescentState,
    trial: Optional[ModelEvaluation],
    sweep: Sweep,
    config: InversionConfig,
) -> tuple[DescentState, bool]:
    """
    Step-size control.

    A trial that lowers the cost replaces the current model, grows ``alpha``
    and relaxes smoothing. Anything else, including a failed trial, keeps the
    model, shrinks ``alpha`` and smooths more.

    Returns:
        The next state and whether the trial was accepted.
    """
    control = state.controls[sweep]
    if trial is not None and trial.cost < state.cost:
        control.grow(config.rho_up, config.rho_eta)
        return DescentState(trial, state.controls, state.iteration), True
    control.shrink(config.rho_down, config.rho_eta)
    return state, False


class InversionRunner:
    """Runs the descent loop for one configuration and data set."""

    def __init__(
        self,
        config: RunConfig,
        data: ObservationSet,
        run_dir: Optional[RunDirectory] = None,
        threads: int = 1,
        dump_gradients: bool = False,
    ):
        self.config = config
        self.inversion = config.inversion
        self.data = data
        self.run_dir = run_dir
        self.threads = threads
        self.dump_gradients = dump_gradients
        self.history = InversionHistory()

    def run(self, curve: BoundaryCurve, impedance: ImpedanceField) -> InversionHistory:
        config = self.config
        evaluation = evaluate_model(
            config.scatter, config.mesh, curve, impedance, self.data, threads=self.threads
        )
        state = DescentState(evaluation, controls={})
        logger.info(f"Initial model: F={state.cost:.6e}, Error={state.error:.4%}")
        if self.run_dir is not None:
            self.run_dir.start_history()
            self.run_dir.write_snapshot(0, state.curve, state.impedance)
        self._log(state.record("initial", accepted=False))

        finished: dict[Sweep, str] = {}
        sweeps = [s for s in self.inversion.sweeps if s != "impedance" or state.impedance.active]
        stop_reason = "iteration cap"
        while state.iteration < self.inversion.max_iterations:
            if state.error <= self.inversion.target_error:
                stop_reason = "target error reached"
                break
            state.iteration += 1
            for sweep in sweeps:
                if sweep in finished:
                    continue
                state, reason = self._sweep(sweep, state)
                if reason is not None:
                    finished[sweep] = reason
                    logger.info(f"{sweep} updates stopped: {reason}")
            if len(finished) == len(sweeps):
                stop_reason = "; ".join(sorted(set(finished.values())))
                break

        self.history.stop_reason = stop_reason
        self.history.final = state
        logger.info(
            f"Inversion stopped after {state.iteration} iterations ({stop_reason}): "
            f"F={state.cost:.6e}, Error={state.error:.4%}"
        )
        if self.run_dir is not None:
            self.run_dir.write_model("final", state.curve, state.impedance)
            self.run_dir.write_summary(self.history.summary())
        return self.history

    def _sweep(self, sweep: Sweep, state: DescentState) -> tuple[DescentState, Optional[str]]:
        evaluation = state.evaluation
        if evaluation.cost == 0.0:
            return state, "gradient vanished"
        adjoints = solve_adjoints(evaluation.problem, evaluation.residuals, self.threads)

        gradient: ShapeGradient | ImpedanceGradient
        if sweep == "shape":
            gradient = shape_gradient(
                evaluation.problem, evaluation.solutions, adjoints, evaluation.fields
            )
            norm = gradient.norm()
        else:
            gradient = impedance_gradient(evaluation.problem, evaluation.solutions, adjoints)
            norm = gradient.norm(active_components(state.impedance))
        if not np.isfinite(norm) or norm == 0.0:
            return state, "gradient vanished"
        if norm <= self.inversion.gradient_floor * self.data.energy:
            logger.debug(f"{sweep} gradient norm {norm:.3e} is below the floor")
            return state, "gradient below floor"

        if self.dump_gradients and self.run_dir is not None:
            self._dump_gradient(state, gradient)

        if sweep not in state.controls:
            control = self._initial_control(sweep, state, gradient)
            if control is None:
                return state, "gradient vanished"
            state.controls[sweep] = control
        control = state.controls[sweep]

        while True:
            trial, note = self._trial(sweep, state, gradient, control)
            state, accepted = accept_or_backtrack(state, trial, sweep, self.inversion)
            self._log(state.record(sweep, accepted, note))
            if accepted:
                self._snapshot(state)
                return state, None
            if control.exhausted:
                return state, "alpha below minimum"

    def _initial_control(
        self, sweep: Sweep, state: DescentState, gradient: ShapeGradient | ImpedanceGradient
    ) -> Optional[StepControl]:
        inv = self.inversion
        eta = smoothing_weight(state.curve, inv.attenuation_order)
        if sweep == "shape":
            assert isinstance(gradient, ShapeGradient)
            unit = shape_step(state.curve, gradient, 1.0, eta, eta)
            amplitude = unit.max_amplitude()
            if amplitude == 0.0:
                return None
            alpha = inv.step_fraction * feature_size(state.curve, state.evaluation.fields) / amplitude
            return StepControl(alpha, {"tau": eta, "nu": eta}, inv.alpha_min_ratio)

        assert isinstance(gradient, ImpedanceGradient)
        increments = impedance_increments(
            state.curve, state.impedance, gradient, 1.0, eta, eta, inv.constant_impedance
        )
        amplitude = max(float(np.max(np.abs(d))) for d in increments.values())
        if amplitude == 0.0:
            return None
        magnitude = max(
            0.1,
            max(float(np.max(np.abs(state.impedance.component(c)))) for c in increments),
        )
        alpha = inv.impedance_step_fraction * magnitude / amplitude
        return StepControl(alpha, {"lambda": eta, "mu": eta}, inv.alpha_min_ratio)

    def _trial(
        self,
        sweep: Sweep,
        state: DescentState,
        gradient: ShapeGradient | ImpedanceGradient,
        control: StepControl,
    ) -> tuple[Optional[ModelEvaluation], str]:
        config = self.config
        try:
            if sweep == "shape":
                assert isinstance(gradient, ShapeGradient)
                curve, impedance = self._shape_trial(state, gradient, control)
                mesh = remesh_after_update(state.mesh, curve)
            else:
                assert isinstance(gradient, ImpedanceGradient)
                curve = state.curve
                impedance = impedance_step(
                    curve,
                    state.impedance,
                    gradient,
                    control.alpha,
                    control.eta["lambda"],
                    control.eta["mu"],
                    self.inversion.constant_impedance,
                    self.inversion.projection_floor,
                )
                mesh = state.mesh
            trial = evaluate_model(
                config.scatter, config.mesh, curve, impedance, self.data, mesh, self.threads
            )
        except TRIAL_FAILURES as exc:
            logger.info(f"Trial {sweep} step rejected: {exc}")
            return None, type(exc).__name__
        return trial, ""

    def _shape_trial(
        self, state: DescentState, gradient: ShapeGradient, control: StepControl
    ) -> tuple[BoundaryCurve, ImpedanceField]:
        curve = state.curve
        fields = state.evaluation.fields
        step = shape_step(curve, gradient, control.alpha, control.eta["tau"], control.eta["nu"])

        bound = self.inversion.safety * feature_size(curve, fields)
        amplitude = step.max_amplitude()
        if amplitude > bound:
            logger.warning(f"Shape step {amplitude:.3e} clamped to {bound:.3e}")
            step = step * (bound / amplitude * (1.0 - 1e-9))

        moved = apply_perturbation(curve, step, fields, self.inversion.safety)
        impedance = state.impedance.with_values(
            transport_impedance(state.impedance.lam, curve, moved),
            transport_impedance(state.impedance.mu, curve, moved),
        )
        if moved.edge_ratio() > self.inversion.resample_ratio:
            logger.warning(f"Edge ratio {moved.edge_ratio():.2f}, resampling boundary nodes")
            resampled = resample(moved, len(moved), method="spline")
            impedance = impedance.with_values(
                resample_field(impedance.lam, moved, resampled),
                resample_field(impedance.mu, moved, resampled),
            )
            moved = resampled
        return moved, impedance

    def _snapshot(self, state: DescentState) -> None:
        every = self.inversion.snapshot_every
        if self.run_dir is not None and every and state.iteration % every == 0:
            self.run_dir.write_snapshot(state.iteration, state.curve, state.impedance)

    def _dump_gradient(
        self, state: DescentState, gradient: ShapeGradient | ImpedanceGradient
    ) -> None:
        assert self.run_dir is not None
        if isinstance(gradient, ShapeGradient):
            columns = {"g_tau": gradient.tangential, "g_nu": gradient.normal}
        else:
            columns = {str(c): v for c, v in gradient.loads.items()}
        self.run_dir.write_gradient(state.iteration, state.curve, columns)

    def _log(self, record) -> None:  # type: ignore[no-untyped-def]
        self.history.append(record)
        if self.run_dir is not None:
            self.run_dir.append_history(record)
        if record.sweep != "initial":
            status = "accepted" if record.accepted else "rejected"
            logger.info(
                f"iter {record.iteration} {record.sweep} {status}: "
                f"F={record.cost:.6e} Error={record.error:.4%} alpha={record.alpha:.3e}"
            )


def run_inversion(
    config: RunConfig,
    data: ObservationSet,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    run_dir: Optional[RunDirectory] = None,
    threads: int = 1,
    dump_gradients: bool = False,
) -> InversionHistory:
    """
    Reconstruct the obstacle and impedances from far-field data.

    Args:
        config: Run configuration; the schedule selects shape-only,
            impedance-only or alternating updates.
        data: Observed far fields.
        curve: Initial boundary.
        impedance: Initial impedances; ``active`` marks the unknowns.
        run_dir: Where history, snapshots and the summary go.
        threads: Concurrent right-hand sides per solve batch.
        dump_gradients: Write nodal gradients every iteration.

    Returns:
        The history of all trials and the final state.
    """
    runner = InversionRunner(config, data, run_dir, threads, dump_gradients)
    return runner.run(curve, impedance)
