"""Adjoint-based gradients of the far-field misfit."""

from gibc.gradients.adjoint import adjoint_incident, solve_adjoints
from gibc.gradients.impedance import ImpedanceGradient, impedance_gradient
from gibc.gradients.shape import (
    ShapeGradient,
    apply_B_eps,
    nodal_trace,
    shape_density_loads,
    shape_gradient,
)

__all__ = [
    "ImpedanceGradient",
    "ShapeGradient",
    "adjoint_incident",
    "apply_B_eps",
    "impedance_gradient",
    "nodal_trace",
    "shape_density_loads",
    "shape_gradient",
    "solve_adjoints",
]
