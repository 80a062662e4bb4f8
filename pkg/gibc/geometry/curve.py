"""
Closed polygonal obstacle boundaries and their discrete differential geometry.
"""

import logging
import math
from collections.abc import Callable
from typing import Literal, Optional

import numpy as np
from numpy.typing import ArrayLike
from scipy.interpolate import CubicSpline
from shapely.geometry import LinearRing, Polygon

logger = logging.getLogger(__name__)

MIN_NODES = 16

ResampleMethod = Literal["linear", "spline"]


class BoundaryCurve:
    """
    Counterclockwise simple closed polygon.

    Node ``n - 1`` connects back to node ``0``. Nodes are stored as a read-only
    ``(n, 2)`` float array; every geometric update produces a new curve.
    """

    __slots__ = ("nodes",)

    def __init__(self, nodes: ArrayLike, *, orient: bool = False):
        """
        Build and validate a curve.

        Args:
            nodes: ``(n, 2)`` node coordinates.
            orient: Reverse clockwise input instead of rejecting it.

        Raises:
            CurveError: On malformed input, repeated nodes or clockwise order.
            SelfIntersection: If the polygon is not simple.
        """
        arr = np.array(nodes, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise CurveError(f"nodes must have shape (n, 2), got {arr.shape}")
        if arr.shape[0] < 3:
            raise CurveError("a closed curve needs at least 3 nodes")
        if not np.all(np.isfinite(arr)):
            raise CurveError("nodes contain non-finite values")

        lengths = np.linalg.norm(np.roll(arr, -1, axis=0) - arr, axis=1)
        if np.any(lengths <= 1e-14 * max(1.0, float(np.max(lengths)))):
            raise CurveError("curve has repeated consecutive nodes")

        if not LinearRing(arr).is_simple:
            raise SelfIntersection("curve is not simple")

        if _signed_area(arr) <= 0.0:
            if not orient:
                raise CurveError("curve must be counterclockwise")
            arr = arr[::-1].copy()

        arr.setflags(write=False)
        self.nodes = arr

    def __len__(self) -> int:
        return int(self.nodes.shape[0])

    def __repr__(self) -> str:
        return f"BoundaryCurve(n={len(self)}, perimeter={self.perimeter:.6g})"

    @property
    def n(self) -> int:
        return len(self)

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors ``p[i+1] - p[i]``."""
        return np.roll(self.nodes, -1, axis=0) - self.nodes

    @property
    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(self.edges, axis=1)

    @property
    def perimeter(self) -> float:
        return float(np.sum(self.edge_lengths))

    @property
    def area(self) -> float:
        return _signed_area(self.nodes)

    @property
    def max_radius(self) -> float:
        """Largest distance of a node from the origin."""
        return float(np.max(np.linalg.norm(self.nodes, axis=1)))

    def polygon(self) -> Polygon:
        return Polygon(self.nodes)

    def interior_point(self) -> np.ndarray:
        """A point strictly inside the obstacle, used as the mesh hole seed."""
        point = self.polygon().representative_point()
        return np.array([point.x, point.y])

    def edge_ratio(self) -> float:
        """Largest ratio between adjacent edge lengths."""
        lengths = self.edge_lengths
        ratio = lengths / np.roll(lengths, 1)
        return float(np.max(np.maximum(ratio, 1.0 / ratio)))

    def polar_angles(self) -> np.ndarray:
        return np.arctan2(self.nodes[:, 1], self.nodes[:, 0])


class CurveFields:
    """Nodal arclength, unit tangent, outward normal, curvature and dual lengths."""

    __slots__ = ("arclength", "tangent", "normal", "curvature", "perimeter", "weights")

    def __init__(
        self,
        arclength: np.ndarray,
        tangent: np.ndarray,
        normal: np.ndarray,
        curvature: np.ndarray,
        perimeter: float,
        weights: np.ndarray,
    ):
        self.arclength = arclength
        self.tangent = tangent
        self.normal = normal
        self.curvature = curvature
        self.perimeter = perimeter
        self.weights = weights

    def integrate(self, values: np.ndarray) -> complex | float:
        """Trapezoid rule on the closed curve."""
        result = np.sum(self.weights * values)
        return complex(result) if np.iscomplexobj(result) else float(result)


def curve_fields(curve: BoundaryCurve) -> CurveFields:
    """
    Discrete geometry of a curve.

    The tangent is the normalized central chord, the normal is the tangent
    rotated clockwise (outward for counterclockwise curves) and the curvature is
    the signed inverse radius of the circle through three consecutive nodes.
    Convex curves have positive curvature.
    """
    nodes = curve.nodes
    prev = np.roll(nodes, 1, axis=0)
    nxt = np.roll(nodes, -1, axis=0)
    back = nodes - prev
    ahead = nxt - nodes
    chord = nxt - prev

    len_back = np.linalg.norm(back, axis=1)
    len_ahead = np.linalg.norm(ahead, axis=1)
    len_chord = np.linalg.norm(chord, axis=1)

    cross = back[:, 0] * ahead[:, 1] - back[:, 1] * ahead[:, 0]
    curvature = 2.0 * cross / (len_back * len_ahead * len_chord)

    tangent = chord / len_chord[:, None]
    normal = np.column_stack([tangent[:, 1], -tangent[:, 0]])

    arclength = np.concatenate([[0.0], np.cumsum(len_ahead)[:-1]])
    perimeter = float(np.sum(len_ahead))
    weights = 0.5 * (len_back + len_ahead)

    return CurveFields(arclength, tangent, normal, curvature, perimeter, weights)


def resample(
    curve: BoundaryCurve, n: int, method: ResampleMethod = "linear"
) -> BoundaryCurve:
    """
    Redistribute ``n`` nodes at equal arclength, keeping node 0 fixed.

    Linear mode measures arclength along the polygon itself and is idempotent on
    equispaced input. Spline mode first passes a periodic cubic spline through
    the nodes.

    Raises:
        CurveError: If ``n`` is below the minimum node count.
        SelfIntersection: If the resampled polygon is not simple.
    """
    if n < MIN_NODES:
        raise CurveError(f"resample needs at least {MIN_NODES} nodes, got {n}")

    if method == "spline":
        dense = _spline_polyline(curve.nodes, samples=32 * max(n, len(curve)))
    elif method == "linear":
        dense = curve.nodes
    else:
        raise CurveError(f"unknown resample method: {method}")

    return BoundaryCurve(_equal_arclength(dense, n))


def resample_field(
    values: np.ndarray, old: BoundaryCurve, new: BoundaryCurve
) -> np.ndarray:
    """
    Transfer nodal values between curves by relative arclength.

    Both curves are parametrized from node 0 by normalized arclength; values
    are interpolated linearly and periodically.
    """
    old_s = _normalized_arclength(old)
    new_s = _normalized_arclength(new)
    closed_s = np.append(old_s, 1.0)
    closed_v = np.append(values, values[0])
    if np.iscomplexobj(values):
        return np.interp(new_s, closed_s, closed_v.real) + 1j * np.interp(
            new_s, closed_s, closed_v.imag
        )
    return np.interp(new_s, closed_s, closed_v)


def circle(
    radius: float, n: int, center: tuple[float, float] = (0.0, 0.0), phase: float = 0.0
) -> BoundaryCurve:
    """Regular polygon inscribed in a circle."""
    theta = phase + 2.0 * math.pi * np.arange(n) / n
    nodes = np.column_stack(
        [center[0] + radius * np.cos(theta), center[1] + radius * np.sin(theta)]
    )
    return BoundaryCurve(nodes)


def ellipse(
    semi_axes: tuple[float, float],
    n: int,
    center: tuple[float, float] = (0.0, 0.0),
    rotation: float = 0.0,
) -> BoundaryCurve:
    a, b = semi_axes
    curve = parametric(lambda t: np.column_stack([a * np.cos(t), b * np.sin(t)]), n)
    return translate(rotate(curve, rotation), center)


def polar_curve(radius: Callable[[np.ndarray], np.ndarray], n: int) -> BoundaryCurve:
    """Star-shaped curve ``r(t) (cos t, sin t)``."""

    def point(t: np.ndarray) -> np.ndarray:
        r = radius(t)
        return np.column_stack([r * np.cos(t), r * np.sin(t)])

    return parametric(point, n)


def parametric(
    point: Callable[[np.ndarray], np.ndarray], n: int, oversample: int = 64
) -> BoundaryCurve:
    """Equal-arclength polygon of a smooth ``2 pi``-periodic parametrization."""
    t = 2.0 * math.pi * np.arange(oversample * n) / (oversample * n)
    dense = BoundaryCurve(point(t), orient=True)
    return BoundaryCurve(_equal_arclength(dense.nodes, n))


def polygon(vertices: ArrayLike, n: Optional[int] = None) -> BoundaryCurve:
    """
    Polygonal obstacle, optionally resampled to ``n`` equispaced nodes.

    Corners are kept only where they fall on the resampled grid.
    """
    curve = BoundaryCurve(vertices, orient=True)
    if n is None:
        return curve
    return resample(curve, n, method="linear")


def rotate(curve: BoundaryCurve, angle: float) -> BoundaryCurve:
    c, s = math.cos(angle), math.sin(angle)
    rotation = np.array([[c, -s], [s, c]])
    return BoundaryCurve(curve.nodes @ rotation.T)


def translate(curve: BoundaryCurve, offset: tuple[float, float]) -> BoundaryCurve:
    return BoundaryCurve(curve.nodes + np.asarray(offset, dtype=float))


def node_count(curve_perimeter: float, spacing: float) -> int:
    """Number of nodes giving an edge length close to ``spacing``."""
    return max(MIN_NODES, math.ceil(curve_perimeter / spacing))


def _signed_area(nodes: np.ndarray) -> float:
    x, y = nodes[:, 0], nodes[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _normalized_arclength(curve: BoundaryCurve) -> np.ndarray:
    lengths = curve.edge_lengths
    return np.concatenate([[0.0], np.cumsum(lengths)[:-1]]) / np.sum(lengths)


def _equal_arclength(nodes: np.ndarray, n: int) -> np.ndarray:
    closed = np.vstack([nodes, nodes[:1]])
    seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    targets = s[-1] * np.arange(n) / n
    x = np.interp(targets, s, closed[:, 0])
    y = np.interp(targets, s, closed[:, 1])
    return np.column_stack([x, y])


def _spline_polyline(nodes: np.ndarray, samples: int) -> np.ndarray:
    closed = np.vstack([nodes, nodes[:1]])
    seg = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    spline = CubicSpline(s, closed, bc_type="periodic", axis=0)
    t = s[-1] * np.arange(samples) / samples
    return np.asarray(spline(t))


class CurveError(Exception):
    """Raised when boundary nodes do not describe a valid closed curve."""

    pass


class SelfIntersection(CurveError):
    """Raised when a curve or an updated curve is not simple."""

    pass
