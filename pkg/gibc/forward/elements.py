"""
Lagrange P1/P2 finite elements on annulus meshes.
"""

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

from gibc.geometry.curve import BoundaryCurve
from gibc.meshing.annulus import AnnulusMesh
from gibc.surface.space import BoundarySpace

# Symmetric 6-point rule on the reference triangle, exact for degree 4.
_A, _WA = 0.445948490915965, 0.223381589678011
_B, _WB = 0.091576213509771, 0.109951743655322
QUADRATURE_BARY = np.array(
    [
        [_A, _A, 1 - 2 * _A],
        [_A, 1 - 2 * _A, _A],
        [1 - 2 * _A, _A, _A],
        [_B, _B, 1 - 2 * _B],
        [_B, 1 - 2 * _B, _B],
        [1 - 2 * _B, _B, _B],
    ]
)
QUADRATURE_WEIGHTS = np.array([_WA, _WA, _WA, _WB, _WB, _WB])

# local edge k joins local vertices EDGE_PAIRS[k]
EDGE_PAIRS = ((0, 1), (1, 2), (2, 0))


def shape_values(bary: np.ndarray, order: int) -> np.ndarray:
    """Shape functions at barycentric points, shape ``(..., nloc)``."""
    if order == 1:
        return bary.copy()
    l0, l1, l2 = bary[..., 0], bary[..., 1], bary[..., 2]
    return np.stack(
        [
            l0 * (2 * l0 - 1),
            l1 * (2 * l1 - 1),
            l2 * (2 * l2 - 1),
            4 * l0 * l1,
            4 * l1 * l2,
            4 * l2 * l0,
        ],
        axis=-1,
    )


def shape_bary_derivatives(bary: np.ndarray, order: int) -> np.ndarray:
    """Derivatives with respect to the barycentric coordinates, ``(Q, nloc, 3)``."""
    q = bary.shape[0]
    if order == 1:
        return np.broadcast_to(np.eye(3), (q, 3, 3)).copy()
    l0, l1, l2 = bary[:, 0], bary[:, 1], bary[:, 2]
    out = np.zeros((q, 6, 3))
    out[:, 0, 0] = 4 * l0 - 1
    out[:, 1, 1] = 4 * l1 - 1
    out[:, 2, 2] = 4 * l2 - 1
    out[:, 3, 0], out[:, 3, 1] = 4 * l1, 4 * l0
    out[:, 4, 1], out[:, 4, 2] = 4 * l2, 4 * l1
    out[:, 5, 2], out[:, 5, 0] = 4 * l0, 4 * l2
    return out


class LagrangeSpace:
    """
    Continuous Lagrange space of order 1 or 2 on an annulus mesh.

    P2 dofs are the mesh vertices followed by one dof per unique edge.
    """

    def __init__(self, mesh: AnnulusMesh, order: int = 2):
        if order not in (1, 2):
            raise ValueError(f"unsupported order {order}")
        self.mesh = mesh
        self.order = order

        nv = len(mesh.vertices)
        tris = mesh.triangles
        if order == 1:
            self.ndof = nv
            self.cell_dofs = tris.copy()
            self.dof_points = mesh.vertices.copy()
            self._edge_ids: np.ndarray | None = None
            self._edge_keys: np.ndarray | None = None
        else:
            pairs = np.stack([np.sort(tris[:, list(p)], axis=1) for p in EDGE_PAIRS], axis=1)
            keys = pairs[..., 0] * nv + pairs[..., 1]
            unique_keys, inverse = np.unique(keys.ravel(), return_inverse=True)
            edge_ids = inverse.reshape(keys.shape)
            self.ndof = nv + len(unique_keys)
            self.cell_dofs = np.concatenate([tris, nv + edge_ids], axis=1)
            a, b = unique_keys // nv, unique_keys % nv
            self.dof_points = np.vstack(
                [mesh.vertices, 0.5 * (mesh.vertices[a] + mesh.vertices[b])]
            )
            self._edge_keys = unique_keys

        self._geometry()

    def _geometry(self) -> None:
        p = self.mesh.vertices[self.mesh.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
        grads = np.empty((len(p), 3, 2))
        grads[:, 0] = np.column_stack([p[:, 1, 1] - p[:, 2, 1], p[:, 2, 0] - p[:, 1, 0]])
        grads[:, 1] = np.column_stack([p[:, 2, 1] - p[:, 0, 1], p[:, 0, 0] - p[:, 2, 0]])
        grads[:, 2] = np.column_stack([p[:, 0, 1] - p[:, 1, 1], p[:, 1, 0] - p[:, 0, 0]])
        self.area = 0.5 * det
        self.bary_gradients = grads / det[:, None, None]
        self._origin = p[:, 0]
        self._jacobian = np.stack([d1, d2], axis=2)
        self._det = det

    def edge_dof(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """P2 dof index of the mesh edges ``(a, b)``."""
        if self._edge_keys is None:
            raise ValueError("P1 spaces have no edge dofs")
        nv = len(self.mesh.vertices)
        keys = np.minimum(a, b) * nv + np.maximum(a, b)
        idx = np.searchsorted(self._edge_keys, keys)
        if np.any(idx >= len(self._edge_keys)) or np.any(self._edge_keys[idx] != keys):
            raise ValueError("edge not in mesh")
        return nv + idx

    def trace_dofs(self, first_vertex: int, count: int) -> np.ndarray:
        """
        Volume dofs of a closed vertex chain in ``BoundarySpace`` order.

        The chain is ``first_vertex .. first_vertex + count - 1`` joined cyclically.
        """
        v = first_vertex + np.arange(count)
        if self.order == 1:
            return v
        out = np.empty(2 * count, dtype=np.int64)
        out[0::2] = v
        out[1::2] = self.edge_dof(v, np.roll(v, -1))
        return out

    def obstacle_space(self, curve: BoundaryCurve) -> tuple[BoundarySpace, np.ndarray]:
        return BoundarySpace(curve, self.order), self.trace_dofs(0, self.mesh.curve_nodes)

    def outer_space(self) -> tuple[BoundarySpace, np.ndarray]:
        outer = BoundaryCurve(self.mesh.outer_points)
        return BoundarySpace(outer, self.order), self.trace_dofs(
            self.mesh.curve_nodes, self.mesh.outer_nodes
        )

    def assemble(self) -> tuple[csr_matrix, csr_matrix]:
        """Stiffness and mass matrices."""
        bary = QUADRATURE_BARY
        phi = shape_values(bary, self.order)
        dphi = shape_bary_derivatives(bary, self.order)
        grads = np.einsum("qac,tcd->tqad", dphi, self.bary_gradients)

        weighted = QUADRATURE_WEIGHTS[None, :] * self.area[:, None]
        stiffness = np.einsum("tq,tqad,tqbd->tab", weighted, grads, grads)
        reference_mass = np.einsum("q,qa,qb->ab", QUADRATURE_WEIGHTS, phi, phi)
        mass = self.area[:, None, None] * reference_mass[None]
        return self._scatter(stiffness), self._scatter(mass)

    def _scatter(self, local: np.ndarray) -> csr_matrix:
        nloc = self.cell_dofs.shape[1]
        rows = np.repeat(self.cell_dofs, nloc, axis=1).ravel()
        cols = np.tile(self.cell_dofs, (1, nloc)).ravel()
        return coo_matrix((local.ravel(), (rows, cols)), shape=(self.ndof, self.ndof)).tocsr()

    def locate(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Containing triangle and barycentric coordinates of each point.

        Raises:
            ValueError: If a point is outside the mesh.
        """
        points = np.atleast_2d(points)
        cells = np.empty(len(points), dtype=np.int64)
        bary = np.empty((len(points), 3))
        for i, x in enumerate(points):
            rel = x - self._origin
            l1 = (self._jacobian[:, 1, 1] * rel[:, 0] - self._jacobian[:, 0, 1] * rel[:, 1]) / self._det
            l2 = (-self._jacobian[:, 1, 0] * rel[:, 0] + self._jacobian[:, 0, 0] * rel[:, 1]) / self._det
            l0 = 1.0 - l1 - l2
            inside = np.minimum(np.minimum(l0, l1), l2)
            cell = int(np.argmax(inside))
            if inside[cell] < -1e-10:
                raise ValueError(f"point {x.tolist()} is outside the mesh")
            cells[i] = cell
            bary[i] = (l0[cell], l1[cell], l2[cell])
        return cells, bary

    def evaluate(self, dofs: np.ndarray, points: np.ndarray) -> np.ndarray:
        """Finite element function at arbitrary points inside the mesh."""
        cells, bary = self.locate(points)
        phi = shape_values(bary, self.order)
        return np.sum(phi * dofs[self.cell_dofs[cells]], axis=1)
