"""
Derivative of the misfit with respect to the impedances.
"""

import numpy as np

from gibc.forward.solver import ScatterProblem, ScatterSolution
from gibc.surface.impedance import ImpedanceComponent


class ImpedanceGradient:
    """
    Nodal loads of the four real impedance components.

    ``load[c][i]`` is the derivative of the misfit along the hat function of
    node ``i`` in component ``c``; the directional derivative along a nodal
    perturbation ``h`` is ``sum_i load[c][i] h_i``.
    """

    __slots__ = ("loads",)

    def __init__(self, loads: dict[ImpedanceComponent, np.ndarray]):
        self.loads = loads

    def __getitem__(self, component: ImpedanceComponent) -> np.ndarray:
        return self.loads[component]

    def directional(self, direction: dict[ImpedanceComponent, np.ndarray]) -> float:
        return float(sum(np.dot(self.loads[c], h) for c, h in direction.items()))

    def norm(self, components: list[ImpedanceComponent]) -> float:
        return float(np.sqrt(sum(np.sum(self.loads[c] ** 2) for c in components)))


def impedance_gradient(
    problem: ScatterProblem,
    solutions: list[ScatterSolution],
    adjoints: list[ScatterSolution],
) -> ImpedanceGradient:
    """
    Loads of ``F'(lambda) h = Re sum_j int h u_j G_j`` and
    ``F'(mu) l = -Re sum_j int l u_j' G_j'``.

    Loads refer to the configured impedance parametrization, so dimensionless
    runs carry the factors ``k`` and ``1/k``.
    """
    boundary = problem.boundary
    lam_load = np.zeros(len(problem.curve), dtype=complex)
    mu_load = np.zeros(len(problem.curve), dtype=complex)
    for u, g in zip(solutions, adjoints):
        ut, gt = u.quadrature_trace(), g.quadrature_trace()
        lam_load += boundary.assemble_nodal_load(ut.values * gt.values)
        mu_load += boundary.assemble_nodal_load(ut.ds * gt.ds)

    k = problem.k
    lam_scale, mu_scale = (k, 1.0 / k) if problem.config.dimensionless_impedance else (1.0, 1.0)
    return ImpedanceGradient(
        {
            ImpedanceComponent.RE_LAMBDA: lam_scale * lam_load.real,
            ImpedanceComponent.IM_LAMBDA: -lam_scale * lam_load.imag,
            ImpedanceComponent.RE_MU: -mu_scale * mu_load.real,
            ImpedanceComponent.IM_MU: mu_scale * mu_load.imag,
        }
    )
