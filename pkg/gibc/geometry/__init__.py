"""Obstacle boundary curves and perturbations."""

from gibc.geometry.curve import (
    BoundaryCurve,
    CurveError,
    CurveFields,
    SelfIntersection,
    circle,
    curve_fields,
    ellipse,
    polar_curve,
    polygon,
    resample,
    resample_field,
)
from gibc.geometry.perturbation import (
    Perturbation,
    StepTooLarge,
    TransportMismatch,
    apply_perturbation,
    feature_size,
    local_feature_size,
    transport_impedance,
)

__all__ = [
    "BoundaryCurve",
    "CurveError",
    "CurveFields",
    "Perturbation",
    "SelfIntersection",
    "StepTooLarge",
    "TransportMismatch",
    "apply_perturbation",
    "circle",
    "curve_fields",
    "ellipse",
    "feature_size",
    "local_feature_size",
    "polar_curve",
    "polygon",
    "resample",
    "resample_field",
    "transport_impedance",
]
