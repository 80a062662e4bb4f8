"""
Periodic Lagrange trace space on a closed polygon.
"""

from functools import cached_property
from typing import Literal

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.sparse import coo_matrix, csc_matrix, csr_matrix
from scipy.sparse.linalg import splu

from gibc.geometry.curve import BoundaryCurve

MatrixKind = Literal["mass", "stiffness"]


class BoundarySpace:
    """
    P1 or P2 functions on the edges of a closed polygon.

    Degrees of freedom run along the curve. For P1 dof ``i`` sits at node
    ``i``; for P2 dof ``2i`` sits at node ``i`` and dof ``2i + 1`` at the
    midpoint of edge ``i`` (from node ``i`` to node ``i + 1``).
    Arrays indexed ``[e, q]`` hold data at Gauss point ``q`` of edge ``e``.
    """

    def __init__(self, curve: BoundaryCurve, order: int = 2, quadrature: int = 4):
        if order not in (1, 2):
            raise ValueError(f"unsupported order {order}")
        self.curve = curve
        self.order = order

        n = len(curve)
        nodes = curve.nodes
        edges = curve.edges
        self.edge_length = np.linalg.norm(edges, axis=1)
        self.edge_tangent = edges / self.edge_length[:, None]
        self.edge_normal = np.column_stack([self.edge_tangent[:, 1], -self.edge_tangent[:, 0]])

        x, w = leggauss(quadrature)
        t = 0.5 * (x + 1.0)
        self.t = t
        self.weights = 0.5 * w[None, :] * self.edge_length[:, None]
        self.points = nodes[:, None, :] + t[None, :, None] * edges[:, None, :]

        # curve-node hats restricted to an edge: (1 - t) at node i, t at node i + 1
        self.hat = np.column_stack([1.0 - t, t])

        if order == 1:
            self.ndof = n
            self.local_dofs = np.column_stack([np.arange(n), (np.arange(n) + 1) % n])
            self.shape = self.hat.copy()
            dshape_ref = np.tile([-1.0, 1.0], (len(t), 1))
            self.dof_points = nodes.copy()
        else:
            self.ndof = 2 * n
            self.local_dofs = np.column_stack(
                [2 * np.arange(n), 2 * np.arange(n) + 1, (2 * np.arange(n) + 2) % (2 * n)]
            )
            self.shape = np.column_stack(
                [(1.0 - t) * (1.0 - 2.0 * t), 4.0 * t * (1.0 - t), t * (2.0 * t - 1.0)]
            )
            dshape_ref = np.column_stack([4.0 * t - 3.0, 4.0 - 8.0 * t, 4.0 * t - 1.0])
            self.dof_points = np.empty((2 * n, 2))
            self.dof_points[0::2] = nodes
            self.dof_points[1::2] = nodes + 0.5 * edges
        # physical derivative per edge: (E, Q, nloc)
        self.dshape = dshape_ref[None, :, :] / self.edge_length[:, None, None]

    @property
    def edge_count(self) -> int:
        return len(self.curve)

    @property
    def node_dofs(self) -> np.ndarray:
        """Dof index of every curve node."""
        step = 1 if self.order == 1 else 2
        return step * np.arange(len(self.curve))

    def evaluate(self, dofs: np.ndarray) -> np.ndarray:
        """Values at the quadrature points."""
        return np.einsum("qa,ea->eq", self.shape, dofs[self.local_dofs])

    def evaluate_ds(self, dofs: np.ndarray) -> np.ndarray:
        """Arclength derivative at the quadrature points."""
        return np.einsum("eqa,ea->eq", self.dshape, dofs[self.local_dofs])

    def interpolate_nodal(self, values: np.ndarray) -> np.ndarray:
        """Piecewise-linear interpolant of curve-node values at the quadrature points."""
        return np.outer(values, 1.0 - self.t) + np.outer(np.roll(values, -1), self.t)

    def nodal_slope(self, values: np.ndarray) -> np.ndarray:
        """Edge slope of the piecewise-linear interpolant, broadcast to ``(E, Q)``."""
        slope = (np.roll(values, -1) - values) / self.edge_length
        return np.repeat(slope[:, None], len(self.t), axis=1)

    def nodal_to_dofs(self, values: np.ndarray) -> np.ndarray:
        """Space coefficients of the piecewise-linear interpolant of nodal values."""
        if self.order == 1:
            return np.array(values, copy=True)
        dofs = np.empty(self.ndof, dtype=np.result_type(values, float))
        dofs[0::2] = values
        dofs[1::2] = 0.5 * (values + np.roll(values, -1))
        return dofs

    def assemble_matrix(self, coefficient: np.ndarray, kind: MatrixKind) -> csr_matrix:
        """
        Weighted mass or stiffness matrix.

        Args:
            coefficient: Coefficient at the quadrature points, shape ``(E, Q)``.
            kind: ``"mass"`` for ``int c u v``; ``"stiffness"`` for ``int c u' v'``.
        """
        wc = self.weights * coefficient
        if kind == "mass":
            local = np.einsum("eq,qa,qb->eab", wc, self.shape, self.shape)
        elif kind == "stiffness":
            local = np.einsum("eq,eqa,eqb->eab", wc, self.dshape, self.dshape)
        else:
            raise ValueError(f"unknown matrix kind: {kind}")
        return self._scatter(local)

    def assemble_load(self, values: np.ndarray) -> np.ndarray:
        """Load ``int f phi_a ds`` for ``f`` given at the quadrature points."""
        local = np.einsum("eq,qa->ea", self.weights * values, self.shape)
        return self._scatter_vector(local)

    def assemble_load_ds(self, values: np.ndarray) -> np.ndarray:
        """Load ``int g phi_a' ds`` for ``g`` given at the quadrature points."""
        local = np.einsum("eq,eqa->ea", self.weights * values, self.dshape)
        return self._scatter_vector(local)

    def assemble_nodal_load(self, values: np.ndarray) -> np.ndarray:
        """Load ``int f hat_i ds`` against the piecewise-linear curve-node hats."""
        local = np.einsum("eq,qa->ea", self.weights * values, self.hat)
        n = len(self.curve)
        out = np.zeros(n, dtype=local.dtype)
        np.add.at(out, np.arange(n), local[:, 0])
        np.add.at(out, (np.arange(n) + 1) % n, local[:, 1])
        return out

    def weak_tangential_load(
        self,
        values: np.ndarray,
        ds_values: np.ndarray,
        lam: np.ndarray,
        mu: np.ndarray,
    ) -> np.ndarray:
        """Load of ``L u`` in weak form: ``int (lambda u phi - mu u' phi') ds``."""
        return self.assemble_load(lam * values) - self.assemble_load_ds(mu * ds_values)

    def project(self, load: np.ndarray) -> np.ndarray:
        """Coefficients whose mass-matrix load equals ``load``."""
        return self._mass_lu.solve(np.asarray(load, dtype=complex))

    @cached_property
    def _mass_lu(self):  # type: ignore[no-untyped-def]
        mass = self.assemble_matrix(np.ones(self.weights.shape, dtype=complex), "mass")
        return splu(csc_matrix(mass))

    def _scatter(self, local: np.ndarray) -> csr_matrix:
        nloc = self.local_dofs.shape[1]
        rows = np.repeat(self.local_dofs, nloc, axis=1).ravel()
        cols = np.tile(self.local_dofs, (1, nloc)).ravel()
        return coo_matrix(
            (local.ravel(), (rows, cols)), shape=(self.ndof, self.ndof)
        ).tocsr()

    def _scatter_vector(self, local: np.ndarray) -> np.ndarray:
        out = np.zeros(self.ndof, dtype=local.dtype)
        np.add.at(out, self.local_dofs.ravel(), local.ravel())
        return out
