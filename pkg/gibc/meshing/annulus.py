"""
Conforming triangulation of the region between the obstacle and the DtN circle.
"""

import logging
import math
from enum import IntEnum

import numpy as np
import triangle
from scipy.sparse import coo_matrix, csc_matrix
from scipy.sparse.linalg import splu

from gibc.geometry.curve import BoundaryCurve

logger = logging.getLogger(__name__)

MAX_REFINEMENTS = 3
RESOLUTION_RATIO = 4.0


class BoundaryTag(IntEnum):
    """Segment markers of the two boundary components."""

    OBSTACLE = 1
    OUTER = 2


class AnnulusMesh:
    """
    Triangle mesh of ``{|x| < R} minus D``.

    Vertices ``0 .. n-1`` are the curve nodes in curve order, vertices
    ``n .. n+m-1`` are the nodes of the outer circle counterclockwise, and the
    remaining vertices are interior Steiner points. Triangles are
    counterclockwise.
    """

    __slots__ = ("vertices", "triangles", "curve_nodes", "outer_nodes", "radius", "h", "min_angle")

    def __init__(
        self,
        vertices: np.ndarray,
        triangles: np.ndarray,
        curve_nodes: int,
        outer_nodes: int,
        radius: float,
        h: float,
        min_angle: float,
    ):
        self.vertices = vertices
        self.triangles = triangles
        self.curve_nodes = curve_nodes
        self.outer_nodes = outer_nodes
        self.radius = radius
        self.h = h
        self.min_angle = min_angle

    def __repr__(self) -> str:
        return (
            f"AnnulusMesh(vertices={len(self.vertices)}, triangles={len(self.triangles)}, "
            f"h={self.h:g})"
        )

    @property
    def obstacle_edges(self) -> np.ndarray:
        i = np.arange(self.curve_nodes)
        return np.column_stack([i, (i + 1) % self.curve_nodes])

    @property
    def outer_edges(self) -> np.ndarray:
        j = np.arange(self.outer_nodes)
        return self.curve_nodes + np.column_stack([j, (j + 1) % self.outer_nodes])

    @property
    def outer_points(self) -> np.ndarray:
        start = self.curve_nodes
        return self.vertices[start : start + self.outer_nodes]

    def areas(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def angles(self) -> np.ndarray:
        """Interior angles in degrees, shape ``(T, 3)``."""
        p = self.vertices[self.triangles]
        out = np.empty(self.triangles.shape)
        for corner in range(3):
            a = p[:, (corner + 1) % 3] - p[:, corner]
            b = p[:, (corner + 2) % 3] - p[:, corner]
            cos = np.sum(a * b, axis=1) / (np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1))
            out[:, corner] = np.degrees(np.arccos(np.clip(cos, -1.0, 1.0)))
        return out

    def smallest_angle(self) -> float:
        return float(np.min(self.angles()))

    def edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Unique undirected edges (sorted vertex pairs) and their triangle counts."""
        pairs = np.sort(
            np.concatenate(
                [self.triangles[:, [0, 1]], self.triangles[:, [1, 2]], self.triangles[:, [2, 0]]]
            ),
            axis=1,
        )
        unique, counts = np.unique(pairs, axis=0, return_counts=True)
        return unique, counts

    def euler_characteristic(self) -> int:
        edges, _ = self.edges()
        return len(self.vertices) - len(edges) + len(self.triangles)

    def is_conforming(self) -> bool:
        """Every boundary edge is a tagged edge and every interior edge is shared."""
        edges, counts = self.edges()
        if np.any(counts > 2):
            return False
        boundary = {tuple(e) for e in edges[counts == 1]}
        tagged = {
            tuple(sorted(e))
            for e in np.concatenate([self.obstacle_edges, self.outer_edges]).tolist()
        }
        return boundary == tagged


def triangulate(
    curve: BoundaryCurve, radius: float, h: float, min_angle: float = 20.0
) -> AnnulusMesh:
    """
    Mesh the annulus between a curve and the circle of radius ``radius``.

    The curve nodes are kept as mesh vertices and boundary segments are never
    split, so the obstacle trace lives exactly on the curve nodes.

    Args:
        curve: Obstacle boundary.
        radius: Radius of the outer circle.
        h: Target element size.
        min_angle: Minimum interior angle in degrees.

    Returns:
        The mesh.

    Raises:
        ClearanceViolation: If the curve comes closer than ``2h`` to the circle.
        ResolutionMismatch: If the mean node spacing differs from ``h`` by more
            than ``RESOLUTION_RATIO``.
        QualityFailure: If the angle bound cannot be met after refinement, or
            the curve itself has a corner sharper than ``min_angle`` on the mesh
            side.
    """
    clearance = radius - curve.max_radius
    if clearance < 2.0 * h:
        raise ClearanceViolation(
            f"obstacle is {clearance:.4f} from the outer circle, need at least {2.0 * h:.4f}"
        )
    spacing = curve.perimeter / len(curve)
    if not h / RESOLUTION_RATIO <= spacing <= RESOLUTION_RATIO * h:
        raise ResolutionMismatch(
            f"node spacing {spacing:.4f} is not within a factor {RESOLUTION_RATIO:g} of h={h:g}"
        )
    corner = float(np.min(exterior_corner_angles(curve)))
    if corner < min_angle:
        # boundary segments are never split, so refinement cannot open the corner
        raise QualityFailure(f"curve corner of {corner:.2f} degrees is below {min_angle}")

    n = len(curve)
    m = max(16, math.ceil(2.0 * math.pi * radius / h))
    theta = 2.0 * math.pi * np.arange(m) / m
    outer = radius * np.column_stack([np.cos(theta), np.sin(theta)])

    i = np.arange(n)
    j = np.arange(m)
    segments = np.concatenate(
        [np.column_stack([i, (i + 1) % n]), n + np.column_stack([j, (j + 1) % m])]
    ).astype(np.int32)
    markers = np.concatenate(
        [np.full(n, BoundaryTag.OBSTACLE), np.full(m, BoundaryTag.OUTER)]
    ).astype(np.int32)[:, None]
    geometry = {
        "vertices": np.vstack([curve.nodes, outer]),
        "segments": segments,
        "segment_markers": markers,
        "holes": curve.interior_point()[None, :],
    }

    max_area = math.sqrt(3.0) / 4.0 * h * h
    for attempt in range(MAX_REFINEMENTS):
        options = f"pq{min_angle + 1.0:g}a{max_area:.10g}YQ"
        raw = triangle.triangulate(geometry, options)
        mesh = _build_mesh(raw, curve, n, m, radius, h, min_angle)
        worst = mesh.smallest_angle()
        if worst >= min_angle:
            logger.debug(
                f"Meshed annulus: {len(mesh.vertices)} vertices, "
                f"{len(mesh.triangles)} triangles, min angle {worst:.2f}"
            )
            return mesh
        logger.info(f"Mesh attempt {attempt + 1}: min angle {worst:.2f} below {min_angle}")
        max_area *= 0.5

    raise QualityFailure(f"could not reach minimum angle {min_angle} degrees")


def remesh_after_update(mesh: AnnulusMesh, curve: BoundaryCurve) -> AnnulusMesh:
    """Fresh mesh of the updated curve with the settings of the old one."""
    return triangulate(curve, mesh.radius, mesh.h, mesh.min_angle)


def exterior_corner_angles(curve: BoundaryCurve) -> np.ndarray:
    """Angles in degrees between adjacent curve edges, measured outside the obstacle."""
    incoming = curve.nodes - np.roll(curve.nodes, 1, axis=0)
    outgoing = np.roll(curve.nodes, -1, axis=0) - curve.nodes
    cross = incoming[:, 0] * outgoing[:, 1] - incoming[:, 1] * outgoing[:, 0]
    turn = np.arctan2(cross, np.sum(incoming * outgoing, axis=1))
    return np.degrees(math.pi + turn)


def morph_mesh(mesh: AnnulusMesh, curve: BoundaryCurve) -> AnnulusMesh:
    """
    Move a mesh onto a displaced curve without changing its connectivity.

    The curve displacement is extended harmonically (graph Laplacian) into
    the interior with the outer circle held fixed, so the vertices depend
    linearly on the curve nodes.

    Raises:
        QualityFailure: If a triangle inverts.
    """
    n = mesh.curve_nodes
    if len(curve) != n:
        raise QualityFailure(f"cannot morph {n} curve vertices onto {len(curve)} nodes")
    fixed = n + mesh.outer_nodes
    edges, _ = mesh.edges()
    total = len(mesh.vertices)
    rows = np.concatenate([edges[:, 0], edges[:, 1], edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0], edges[:, 0], edges[:, 1]])
    ones = np.ones(len(edges))
    values = np.concatenate([-ones, -ones, ones, ones])
    laplacian = coo_matrix((values, (rows, cols)), shape=(total, total)).tocsr()

    shift = np.zeros_like(mesh.vertices)
    shift[:n] = curve.nodes - mesh.vertices[:n]
    if total > fixed:
        inner = laplacian[fixed:, fixed:]
        coupling = laplacian[fixed:, :fixed]
        lu = splu(csc_matrix(inner))
        shift[fixed:] = lu.solve(np.ascontiguousarray(-(coupling @ shift[:fixed])))

    vertices = mesh.vertices + shift
    vertices[:n] = curve.nodes
    morphed = AnnulusMesh(
        vertices, mesh.triangles, n, mesh.outer_nodes, mesh.radius, mesh.h, mesh.min_angle
    )
    if np.any(morphed.areas() <= 0.0):
        raise QualityFailure("morphed mesh has inverted triangles")
    return morphed


def _build_mesh(
    raw: dict[str, np.ndarray],
    curve: BoundaryCurve,
    n: int,
    m: int,
    radius: float,
    h: float,
    min_angle: float,
) -> AnnulusMesh:
    vertices = np.asarray(raw["vertices"], dtype=float)
    triangles = np.asarray(raw["triangles"], dtype=np.int64)
    if len(vertices) < n + m or not np.array_equal(vertices[:n], curve.nodes):
        raise QualityFailure("triangulation moved boundary vertices")

    p = vertices[triangles]
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    clockwise = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0] < 0
    triangles[clockwise] = triangles[clockwise][:, [0, 2, 1]]

    return AnnulusMesh(vertices, triangles, n, m, radius, h, min_angle)


class ClearanceViolation(Exception):
    """Raised when the obstacle is too close to the artificial boundary."""

    pass


class QualityFailure(Exception):
    """Raised when the mesher cannot meet the requested element quality."""

    pass


class ResolutionMismatch(QualityFailure):
    """Raised when the curve node spacing does not match the element size."""

    pass
