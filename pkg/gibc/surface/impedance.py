"""
Nodal impedance pair (lambda, mu) and its admissible set.
"""

import logging
from collections.abc import Iterable
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np

logger = logging.getLogger(__name__)


class ImpedanceComponent(StrEnum):
    """Real unknowns carried by an impedance pair."""

    RE_LAMBDA = "re_lambda"
    IM_LAMBDA = "im_lambda"
    RE_MU = "re_mu"
    IM_MU = "im_mu"

    @property
    def is_lambda(self) -> bool:
        return self in (ImpedanceComponent.RE_LAMBDA, ImpedanceComponent.IM_LAMBDA)

    @property
    def is_real(self) -> bool:
        return self in (ImpedanceComponent.RE_LAMBDA, ImpedanceComponent.RE_MU)


class ImpedanceField:
    """
    Complex nodal values of lambda and mu on a boundary curve.

    ``active`` lists the components treated as unknowns; inactive components
    are left untouched by steps and by the admissibility projection.
    """

    __slots__ = ("lam", "mu", "active")

    def __init__(
        self,
        lam: np.ndarray,
        mu: np.ndarray,
        active: Iterable[ImpedanceComponent] = tuple(ImpedanceComponent),
    ):
        lam = np.asarray(lam, dtype=complex).copy()
        mu = np.asarray(mu, dtype=complex).copy()
        if lam.shape != mu.shape or lam.ndim != 1:
            raise ValueError("lambda and mu must be 1-d arrays of equal length")
        self.lam = lam
        self.mu = mu
        self.active = frozenset(active)

    @classmethod
    def constant(
        cls,
        n: int,
        lam: complex,
        mu: complex,
        active: Iterable[ImpedanceComponent] = tuple(ImpedanceComponent),
    ) -> "ImpedanceField":
        return cls(np.full(n, lam, dtype=complex), np.full(n, mu, dtype=complex), active)

    def __len__(self) -> int:
        return int(self.lam.shape[0])

    def __repr__(self) -> str:
        return (
            f"ImpedanceField(n={len(self)}, lam~{np.mean(self.lam):.4g}, "
            f"mu~{np.mean(self.mu):.4g})"
        )

    def copy(self) -> "ImpedanceField":
        return ImpedanceField(self.lam, self.mu, self.active)

    def with_values(self, lam: np.ndarray, mu: np.ndarray) -> "ImpedanceField":
        return ImpedanceField(lam, mu, self.active)

    def component(self, name: ImpedanceComponent) -> np.ndarray:
        source = self.lam if name.is_lambda else self.mu
        return source.real.copy() if name.is_real else source.imag.copy()

    def with_component(self, name: ImpedanceComponent, values: np.ndarray) -> "ImpedanceField":
        lam, mu = self.lam.copy(), self.mu.copy()
        target = lam if name.is_lambda else mu
        if name.is_real:
            target.real = values
        else:
            target.imag = values
        return ImpedanceField(lam, mu, self.active)

    def scaled(self, k: float) -> tuple[np.ndarray, np.ndarray]:
        """Physical (lambda, mu) for dimensionless values at wavenumber ``k``."""
        return k * self.lam, self.mu / k

    def project(self, floor: float = 1e-3) -> "ImpedanceField":
        """
        Nearest admissible pair for the active components.

        Enforces ``Im lambda >= 0``, ``Im mu <= 0`` and ``Re mu >= floor``.
        """
        lam, mu = self.lam.copy(), self.mu.copy()
        if ImpedanceComponent.IM_LAMBDA in self.active:
            lam.imag = np.maximum(lam.imag, 0.0)
        if ImpedanceComponent.IM_MU in self.active:
            mu.imag = np.minimum(mu.imag, 0.0)
        if ImpedanceComponent.RE_MU in self.active:
            mu.real = np.maximum(mu.real, floor)
        return ImpedanceField(lam, mu, self.active)

    def is_admissible(self, floor: float = 1e-3) -> bool:
        return bool(
            np.all(self.lam.imag >= 0.0)
            and np.all(self.mu.imag <= 0.0)
            and np.all(self.mu.real >= floor)
        )
