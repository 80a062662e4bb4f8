"""
Pydantic models for run results and reports.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field


class IterationRecord(BaseModel):
    """One trial of the descent driver."""

    iteration: int = Field(..., ge=0)
    sweep: Literal["initial", "shape", "impedance"] = Field(..., description="Kind of update")
    cost: float = Field(..., ge=0, description="Misfit F of the current state")
    error: float = Field(..., ge=0, description="Mean relative far-field error")
    alpha: float = Field(..., description="Descent coefficient used for the trial")
    eta_tau: float = 0.0
    eta_nu: float = 0.0
    eta_lambda: float = 0.0
    eta_mu: float = 0.0
    accepted: bool = False
    nodes: int = Field(0, ge=0, description="Boundary node count of the current state")
    note: str = ""

    def as_row(self) -> dict[str, str]:
        return {
            "iter": str(self.iteration),
            "sweep": self.sweep,
            "F": repr(self.cost),
            "Error": repr(self.error),
            "alpha": repr(self.alpha),
            "eta_tau": repr(self.eta_tau),
            "eta_nu": repr(self.eta_nu),
            "eta_lambda": repr(self.eta_lambda),
            "eta_mu": repr(self.eta_mu),
            "accepted": "1" if self.accepted else "0",
            "nodes": str(self.nodes),
            "note": self.note,
        }

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "IterationRecord":
        return cls(
            iteration=int(row["iter"]),
            sweep=row["sweep"],  # type: ignore[arg-type]
            cost=float(row["F"]),
            error=float(row["Error"]),
            alpha=float(row["alpha"]),
            eta_tau=float(row["eta_tau"]),
            eta_nu=float(row["eta_nu"]),
            eta_lambda=float(row["eta_lambda"]),
            eta_mu=float(row["eta_mu"]),
            accepted=row["accepted"] == "1",
            nodes=int(row["nodes"]),
            note=row.get("note", ""),
        )


class InversionSummary(BaseModel):
    """Outcome of an inversion run."""

    iterations: int
    accepted: int
    initial_error: float
    final_error: float
    final_cost: float
    stop_reason: str
    lam_mean: Optional[tuple[float, float]] = Field(
        None, description="Mean recovered lambda as (re, im)"
    )
    mu_mean: Optional[tuple[float, float]] = Field(None, description="Mean recovered mu as (re, im)")


class ValidationCheck(BaseModel):
    """Single pass/fail check of the validation suite."""

    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""


class ValidationReport(BaseModel):
    """All checks of a validation run."""

    checks: list[ValidationCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(
        self, name: str, value: float, tolerance: float, passed: bool, detail: str = ""
    ) -> ValidationCheck:
        check = ValidationCheck(
            name=name, value=value, tolerance=tolerance, passed=passed, detail=detail
        )
        self.checks.append(check)
        return check
