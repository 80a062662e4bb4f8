"""Analytic disk solutions used as reference."""

from gibc.oracle.circle import (
    ModeCoefficients,
    ModeResonance,
    circle_series,
    mode_coefficients,
    oracle_cost,
    oracle_farfield_compare,
)

__all__ = [
    "ModeCoefficients",
    "ModeResonance",
    "circle_series",
    "mode_coefficients",
    "oracle_cost",
    "oracle_farfield_compare",
]
