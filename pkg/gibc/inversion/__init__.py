"""Steepest-descent reconstruction."""

from gibc.inversion.cost import ModelEvaluation, cost, evaluate_model, misfit
from gibc.inversion.driver import InversionRunner, accept_or_backtrack, run_inversion
from gibc.inversion.state import DescentState, InversionHistory, StepControl
from gibc.inversion.steps import impedance_increments, impedance_step, shape_step

__all__ = [
    "DescentState",
    "InversionHistory",
    "InversionRunner",
    "ModelEvaluation",
    "StepControl",
    "accept_or_backtrack",
    "cost",
    "evaluate_model",
    "impedance_increments",
    "impedance_step",
    "misfit",
    "run_inversion",
    "shape_step",
]
