"""
Finite element solver for scattering by an obstacle with a generalized impedance condition.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from scipy.sparse import coo_matrix, csc_matrix, csr_matrix
from scipy.sparse.linalg import splu

from gibc.fields.base import IncidentField
from gibc.forward.dtn import circle_coefficients, dtn_matrix, exterior_series
from gibc.forward.elements import LagrangeSpace
from gibc.geometry.curve import BoundaryCurve
from gibc.meshing.annulus import AnnulusMesh
from gibc.models.configs import ScatterConfig
from gibc.surface.calculus import BoundaryField, d_ds
from gibc.surface.impedance import ImpedanceField

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10


class BoundaryTrace:
    """Total field, its arclength derivative and ``L u`` at the obstacle quadrature points."""

    __slots__ = ("values", "ds", "tangential")

    def __init__(self, values: np.ndarray, ds: np.ndarray, tangential: np.ndarray):
        self.values = values
        self.ds = ds
        self.tangential = tangential


class ScatterProblem:
    """
    Assembled and factorized system for one obstacle, impedance and mesh.

    The unknown is the scattered field ``u^s`` in the annulus. For a test
    function ``v`` the system reads

        int (grad u^s . grad v - k^2 u^s v) + int_dD (mu u^s' v' - lambda u^s v)
            - <S u^s, v>_R = int_dD (d_nu u^i v - mu u^i' v' + lambda u^i v)

    with ``S`` the exterior DtN map. The matrix is complex symmetric, so the
    same factorization serves forward and adjoint solves.
    """

    def __init__(
        self,
        config: ScatterConfig,
        curve: BoundaryCurve,
        impedance: ImpedanceField,
        mesh: AnnulusMesh,
    ):
        """
        Assemble and factorize.

        Raises:
            MeshMismatch: If the mesh was not built from ``curve``.
            SolveFailure: If the factorization breaks down.
        """
        if mesh.curve_nodes != len(curve) or not np.array_equal(
            mesh.vertices[: len(curve)], curve.nodes
        ):
            raise MeshMismatch("mesh obstacle vertices do not match the curve")
        if len(impedance) != len(curve):
            raise MeshMismatch(
                f"impedance has {len(impedance)} nodes, curve has {len(curve)}"
            )

        self.config = config
        self.k = config.wavenumber
        self.curve = curve
        self.impedance = impedance
        self.mesh = mesh

        if config.dimensionless_impedance:
            self.lam, self.mu = impedance.scaled(self.k)
        else:
            self.lam, self.mu = impedance.lam.copy(), impedance.mu.copy()

        self.space = LagrangeSpace(mesh, config.fe_order)
        self.boundary, self.boundary_dofs = self.space.obstacle_space(curve)
        self.outer, self.outer_dofs = self.space.outer_space()
        self.lam_q = self.boundary.interpolate_nodal(self.lam)
        self.mu_q = self.boundary.interpolate_nodal(self.mu)

        self.matrix = self._assemble()
        try:
            self._lu = splu(csc_matrix(self.matrix))
        except RuntimeError as exc:
            raise SolveFailure(f"factorization failed: {exc}") from exc
        logger.debug(f"Factorized system with {self.space.ndof} dofs")

    def _assemble(self) -> csr_matrix:
        stiffness, mass = self.space.assemble()
        system = (stiffness - self.k**2 * mass).astype(complex)

        tangential = self.boundary.assemble_matrix(
            self.mu_q, "stiffness"
        ) - self.boundary.assemble_matrix(self.lam_q, "mass")
        tangential = tangential.tocoo()
        system = system + coo_matrix(
            (
                tangential.data,
                (self.boundary_dofs[tangential.row], self.boundary_dofs[tangential.col]),
            ),
            shape=system.shape,
        )

        dtn = dtn_matrix(self.outer, self.k, self.config.radius, self.config.modes)
        size = len(self.outer_dofs)
        rows = np.repeat(self.outer_dofs, size)
        cols = np.tile(self.outer_dofs, size)
        system = system - coo_matrix((dtn.ravel(), (rows, cols)), shape=system.shape)
        return csr_matrix(system)

    @property
    def ndof(self) -> int:
        return self.space.ndof

    def load(self, incident: IncidentField) -> np.ndarray:
        """Right-hand side for one incident field."""
        boundary = self.boundary
        points = boundary.points
        grad = incident.gradient(points)
        values = incident.evaluate(points)
        dn = np.sum(grad * boundary.edge_normal[:, None, :], axis=-1)
        ds = np.sum(grad * boundary.edge_tangent[:, None, :], axis=-1)
        local = boundary.assemble_load(dn + self.lam_q * values) - boundary.assemble_load_ds(
            self.mu_q * ds
        )
        rhs = np.zeros(self.ndof, dtype=complex)
        np.add.at(rhs, self.boundary_dofs, local)
        return rhs

    def solve_many(
        self, incidents: Sequence[IncidentField], threads: int = 1
    ) -> list["ScatterSolution"]:
        """
        Solve for several incident fields with the shared factorization.

        Loads are assembled concurrently when ``threads > 1``; results do not
        depend on the thread count.

        Raises:
            SolveFailure: If the algebraic residual is too large.
        """
        if not incidents:
            return []
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                loads = list(pool.map(self.load, incidents))
        else:
            loads = [self.load(incident) for incident in incidents]

        rhs = np.column_stack(loads)
        solution = self._lu.solve(rhs)
        if solution.ndim == 1:
            solution = solution[:, None]
        if np.max(self.relative_residual(rhs, solution)) > RESIDUAL_TOLERANCE:
            logger.debug("Refining solution once against the assembled matrix")
            correction = self._lu.solve(rhs - self.matrix @ solution)
            solution = solution + correction.reshape(solution.shape)
        self._check_residual(rhs, solution)
        return [
            ScatterSolution(self, incident, solution[:, j]) for j, incident in enumerate(incidents)
        ]

    def solve(self, incident: IncidentField) -> "ScatterSolution":
        return self.solve_many([incident])[0]

    def relative_residual(self, rhs: np.ndarray, solution: np.ndarray) -> np.ndarray:
        """Per-column ``|A x - b| / |b|``; the absolute residual where ``b`` vanishes."""
        scale = np.linalg.norm(rhs, axis=0)
        residual = np.linalg.norm(self.matrix @ solution - rhs, axis=0)
        return np.where(scale > 0, residual / np.where(scale > 0, scale, 1.0), residual)

    def _check_residual(self, rhs: np.ndarray, solution: np.ndarray) -> None:
        worst = float(np.max(self.relative_residual(rhs, solution)))
        if not np.isfinite(worst) or worst > RESIDUAL_TOLERANCE:
            raise SolveFailure(f"relative residual {worst:.3e} exceeds {RESIDUAL_TOLERANCE:g}")


class ScatterSolution:
    """Scattered field for one incident field plus access to its boundary trace."""

    def __init__(self, problem: ScatterProblem, incident: IncidentField, scattered: np.ndarray):
        self.problem = problem
        self.incident = incident
        self.scattered = scattered
        self._trace: Optional[BoundaryTrace] = None

    @property
    def space(self) -> LagrangeSpace:
        return self.problem.space

    def total_dofs(self) -> np.ndarray:
        """Total field interpolated at the dof points."""
        return self.scattered + self.incident.evaluate(self.space.dof_points)

    def scattered_at(self, points: np.ndarray) -> np.ndarray:
        """
        Scattered field at points of the annulus or outside the DtN circle.

        Points beyond the circle use the radiating Fourier continuation of the
        outer trace.
        """
        points = np.atleast_2d(points)
        config = self.problem.config
        outside = np.linalg.norm(points, axis=1) > config.radius
        values = np.empty(len(points), dtype=complex)
        if np.any(~outside):
            values[~outside] = self.space.evaluate(self.scattered, points[~outside])
        if np.any(outside):
            values[outside] = exterior_series(
                self.outer_coefficients(), self.problem.k, config.radius, points[outside]
            )
        return values

    def outer_coefficients(self) -> np.ndarray:
        """Fourier coefficients of the scattered field on the DtN circle."""
        problem = self.problem
        return circle_coefficients(
            problem.outer,
            self.scattered[problem.outer_dofs],
            problem.config.radius,
            problem.config.modes,
        )

    def boundary_scattered(self) -> np.ndarray:
        """Scattered field in ``BoundarySpace`` coefficients."""
        return self.scattered[self.problem.boundary_dofs]

    def quadrature_trace(self) -> BoundaryTrace:
        """Total field data at the obstacle quadrature points."""
        if self._trace is not None:
            return self._trace
        problem = self.problem
        boundary = problem.boundary
        coefficients = self.boundary_scattered()
        grad = self.incident.gradient(boundary.points)
        values = boundary.evaluate(coefficients) + self.incident.evaluate(boundary.points)
        ds = boundary.evaluate_ds(coefficients) + np.sum(
            grad * boundary.edge_tangent[:, None, :], axis=-1
        )
        load = boundary.weak_tangential_load(values, ds, problem.lam_q, problem.mu_q)
        tangential = boundary.evaluate(boundary.project(load))
        self._trace = BoundaryTrace(values, ds, tangential)
        return self._trace

    def trace(self) -> BoundaryField:
        """Total field at the curve nodes."""
        boundary = self.problem.boundary
        nodal = self.boundary_scattered()[boundary.node_dofs]
        nodal = nodal + self.incident.evaluate(self.problem.curve.nodes)
        return BoundaryField(self.problem.curve, nodal)

    def ds_trace(self) -> BoundaryField:
        return d_ds(self.trace())


def assemble_and_solve(
    config: ScatterConfig,
    mesh: AnnulusMesh,
    curve: BoundaryCurve,
    impedance: ImpedanceField,
    incident: IncidentField,
) -> ScatterSolution:
    """Single solve; prefer ``ScatterProblem.solve_many`` for several incident fields."""
    return ScatterProblem(config, curve, impedance, mesh).solve(incident)


class MeshMismatch(Exception):
    """Raised when the mesh, curve and impedance do not belong together."""

    pass


class SolveFailure(Exception):
    """Raised when the linear system cannot be solved accurately."""

    pass
