"""Annulus meshing."""

from gibc.meshing.annulus import (
    AnnulusMesh,
    BoundaryTag,
    ClearanceViolation,
    QualityFailure,
    remesh_after_update,
    triangulate,
)

__all__ = [
    "AnnulusMesh",
    "BoundaryTag",
    "ClearanceViolation",
    "QualityFailure",
    "remesh_after_update",
    "triangulate",
]
