"""Surface calculus and impedances on obstacle boundaries."""

from gibc.surface.calculus import (
    BoundaryField,
    apply_L,
    d_ds,
    flux_divergence,
    h1_smooth,
    smoothing_weight,
    weak_L_pairing,
)
from gibc.surface.impedance import ImpedanceComponent, ImpedanceField
from gibc.surface.space import BoundarySpace

__all__ = [
    "BoundaryField",
    "BoundarySpace",
    "ImpedanceComponent",
    "ImpedanceField",
    "apply_L",
    "d_ds",
    "flux_divergence",
    "h1_smooth",
    "smoothing_weight",
    "weak_L_pairing",
]
