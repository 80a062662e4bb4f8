"""Forward scattering solver."""

from gibc.forward.dtn import dtn_matrix, dtn_symbol, dtn_symbols
from gibc.forward.elements import LagrangeSpace
from gibc.forward.farfield import (
    FarField,
    ObservationSet,
    far_field,
    far_field_at,
    far_field_from_circle,
    far_fields,
    mixed_reciprocity_residual,
    observation_angles,
)
from gibc.forward.solver import (
    BoundaryTrace,
    MeshMismatch,
    ScatterProblem,
    ScatterSolution,
    SolveFailure,
    assemble_and_solve,
)

__all__ = [
    "BoundaryTrace",
    "FarField",
    "LagrangeSpace",
    "MeshMismatch",
    "ObservationSet",
    "ScatterProblem",
    "ScatterSolution",
    "SolveFailure",
    "assemble_and_solve",
    "dtn_matrix",
    "dtn_symbol",
    "dtn_symbols",
    "far_field",
    "far_field_at",
    "far_field_from_circle",
    "far_fields",
    "mixed_reciprocity_residual",
    "observation_angles",
]
