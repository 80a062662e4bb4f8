"""
Construction of curves, impedances and incident fields from run configuration.
"""

import logging
import math
from pathlib import Path
from typing import Optional

import numpy as np

from gibc.fields.plane import PlaneWave, plane_waves
from gibc.geometry import curve as shapes
from gibc.geometry.curve import BoundaryCurve, node_count, resample, resample_field
from gibc.models.configs import GeometrySpec, ImpedanceProfile, ImpedanceSpec, ModelSpec, RunConfig
from gibc.storage.csv_io import read_curve, read_impedance
from gibc.surface.impedance import ImpedanceComponent, ImpedanceField

logger = logging.getLogger(__name__)


def build_curve(spec: GeometrySpec, spacing: float, base_dir: Optional[Path] = None) -> BoundaryCurve:
    """
    Curve for a geometry spec with nodes about ``spacing`` apart.

    Args:
        spec: Geometry description.
        spacing: Target node spacing.
        base_dir: Directory that relative file paths are resolved against.
    """
    if spec.kind == "circle":
        n = node_count(2.0 * math.pi * spec.radius, spacing)
        curve = shapes.circle(spec.radius, n)
    elif spec.kind == "ellipse":
        a, b = spec.semi_axes
        perimeter = math.pi * (3 * (a + b) - math.sqrt((3 * a + b) * (a + 3 * b)))
        curve = shapes.ellipse((a, b), node_count(perimeter, spacing))
    elif spec.kind == "polar":
        radius = polar_radius(spec)
        rough = shapes.polar_curve(radius, 256)
        curve = shapes.polar_curve(radius, node_count(rough.perimeter, spacing))
    elif spec.kind == "polygon":
        outline = BoundaryCurve(spec.vertices, orient=True)
        curve = shapes.polygon(spec.vertices, node_count(outline.perimeter, spacing))
    else:
        path = Path(spec.path or "")
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        loaded = read_curve(path)
        curve = resample(loaded, node_count(loaded.perimeter, spacing), method="spline")

    if spec.rotation:
        curve = shapes.rotate(curve, spec.rotation)
    if spec.center != (0.0, 0.0):
        curve = shapes.translate(curve, spec.center)
    logger.debug(f"Built {spec.kind} curve with {len(curve)} nodes")
    return curve


def polar_radius(spec: GeometrySpec):  # type: ignore[no-untyped-def]
    """Radius function ``r(t) = r0 + sum c_m cos(m t) + s_m sin(m t)`` of a polar spec."""

    def radius(t: np.ndarray) -> np.ndarray:
        r = np.full_like(t, spec.base_radius)
        for term in spec.harmonics:
            r = r + term.cos.re * np.cos(term.order * t) + term.sin.re * np.sin(term.order * t)
        return r

    return radius


def evaluate_profile(profile: ImpedanceProfile, angles: np.ndarray) -> np.ndarray:
    """Profile values at the given polar angles."""
    shifted = angles + profile.phase
    values = np.full(angles.shape, profile.offset.value, dtype=complex)
    for term in profile.harmonics:
        values += term.cos.value * np.cos(term.order * shifted)
        values += term.sin.value * np.sin(term.order * shifted)
    return values


def build_impedance(
    spec: ImpedanceSpec,
    curve: BoundaryCurve,
    active: Optional[list[ImpedanceComponent]] = None,
    base_dir: Optional[Path] = None,
) -> ImpedanceField:
    """Nodal impedances on ``curve`` from profiles or from a nodal table."""
    components = tuple(active) if active is not None else tuple(ImpedanceComponent)
    if spec.path:
        path = Path(spec.path)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        nodes, table = read_impedance(path)
        source = BoundaryCurve(nodes)
        lam = resample_field(table.lam, source, curve)
        mu = resample_field(table.mu, source, curve)
        return ImpedanceField(lam, mu, components)

    angles = curve.polar_angles()
    return ImpedanceField(
        evaluate_profile(spec.lam, angles), evaluate_profile(spec.mu, angles), components
    )


def build_incidents(config: RunConfig) -> list[PlaneWave]:
    return plane_waves(config.scatter.wavenumber, config.incidence.angles)


def build_model(
    spec: ModelSpec,
    config: RunConfig,
    active: Optional[list[ImpedanceComponent]] = None,
    base_dir: Optional[Path] = None,
) -> tuple[BoundaryCurve, ImpedanceField]:
    """Curve and nodal impedances of a model spec at the configured node spacing."""
    curve = build_curve(spec.geometry, config.mesh.spacing, base_dir)
    return curve, build_impedance(spec.impedance, curve, active, base_dir)
