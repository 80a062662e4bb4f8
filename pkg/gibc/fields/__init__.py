"""
Incident fields - plane waves, point sources and Herglotz waves.
"""

from gibc.fields.base import IncidentField, IncidentKind
from gibc.fields.herglotz import HerglotzField, far_field_constant
from gibc.fields.plane import PlaneWave, plane_waves
from gibc.fields.point import PointSource

__all__ = [
    # Base classes
    "IncidentField",
    "IncidentKind",
    # Fields
    "HerglotzField",
    "PlaneWave",
    "PointSource",
    # Helpers
    "far_field_constant",
    "plane_waves",
]
