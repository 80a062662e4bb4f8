"""
Descent state and run history.
"""

from typing import Literal, Optional

import numpy as np

from gibc.geometry.curve import BoundaryCurve
from gibc.inversion.cost import ModelEvaluation
from gibc.meshing.annulus import AnnulusMesh
from gibc.models.results import InversionSummary, IterationRecord
from gibc.surface.impedance import ImpedanceComponent, ImpedanceField

Sweep = Literal["shape", "impedance"]


class StepControl:
    """
    Descent coefficient and smoothing weights of one kind of update.

    Accepted steps grow ``alpha`` and relax smoothing; rejected steps shrink
    ``alpha`` and smooth more.
    """

    def __init__(self, alpha: float, eta: dict[str, float], alpha_min_ratio: float = 1e-6):
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        self.alpha = alpha
        self.alpha_min = alpha * alpha_min_ratio
        self.eta = dict(eta)

    def __repr__(self) -> str:
        return f"StepControl(alpha={self.alpha:.3e}, eta={self.eta})"

    def grow(self, rho_up: float, rho_eta: float) -> None:
        self.alpha *= rho_up
        self.eta = {key: value / rho_eta for key, value in self.eta.items()}

    def shrink(self, rho_down: float, rho_eta: float) -> None:
        self.alpha /= rho_down
        self.eta = {key: value * rho_eta for key, value in self.eta.items()}

    @property
    def exhausted(self) -> bool:
        return self.alpha < self.alpha_min


class DescentState:
    """Current model, its evaluation and the step controls."""

    def __init__(
        self,
        evaluation: ModelEvaluation,
        controls: dict[Sweep, StepControl],
        iteration: int = 0,
    ):
        self.evaluation = evaluation
        self.controls = controls
        self.iteration = iteration

    @property
    def curve(self) -> BoundaryCurve:
        return self.evaluation.curve

    @property
    def impedance(self) -> ImpedanceField:
        return self.evaluation.impedance

    @property
    def mesh(self) -> AnnulusMesh:
        return self.evaluation.mesh

    @property
    def cost(self) -> float:
        return self.evaluation.cost

    @property
    def error(self) -> float:
        return self.evaluation.error

    def record(self, sweep: str, accepted: bool, note: str = "") -> IterationRecord:
        shape = self.controls.get("shape")
        impedance = self.controls.get("impedance")
        control = self.controls.get(sweep)  # type: ignore[call-overload]
        return IterationRecord(
            iteration=self.iteration,
            sweep=sweep,  # type: ignore[arg-type]
            cost=self.cost,
            error=self.error,
            alpha=control.alpha if control is not None else 0.0,
            eta_tau=shape.eta.get("tau", 0.0) if shape else 0.0,
            eta_nu=shape.eta.get("nu", 0.0) if shape else 0.0,
            eta_lambda=impedance.eta.get("lambda", 0.0) if impedance else 0.0,
            eta_mu=impedance.eta.get("mu", 0.0) if impedance else 0.0,
            accepted=accepted,
            nodes=len(self.curve),
            note=note,
        )


class InversionHistory:
    """Records of every trial plus the final state."""

    def __init__(self) -> None:
        self.records: list[IterationRecord] = []
        self.stop_reason = ""
        self.final: Optional[DescentState] = None

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    @property
    def accepted(self) -> list[IterationRecord]:
        return [r for r in self.records if r.accepted]

    def accepted_costs(self) -> list[float]:
        """Cost after the initial evaluation and after every accepted trial."""
        return [r.cost for r in self.records if r.accepted or r.sweep == "initial"]

    def summary(self) -> InversionSummary:
        if self.final is None:
            raise ValueError("inversion has not finished")
        impedance = self.final.impedance
        lam = complex(np.mean(impedance.lam))
        mu = complex(np.mean(impedance.mu))
        return InversionSummary(
            iterations=self.final.iteration,
            accepted=len(self.accepted),
            initial_error=self.records[0].error,
            final_error=self.final.error,
            final_cost=self.final.cost,
            stop_reason=self.stop_reason,
            lam_mean=(lam.real, lam.imag),
            mu_mean=(mu.real, mu.imag),
        )


def active_components(impedance: ImpedanceField) -> list[ImpedanceComponent]:
    return [c for c in ImpedanceComponent if c in impedance.active]
