"""
Fourier Dirichlet-to-Neumann map of the exterior of a circle.
"""

import math

import numpy as np
from scipy.special import hankel1

from gibc.surface.space import BoundarySpace


def hankel_ratios(orders: int, x: float) -> np.ndarray:
    """
    ``H_{n-1}(x) / H_n(x)`` for ``n = 1 .. orders``.

    Uses the upward three-term recurrence in ratio form, which stays finite
    where ``H_n`` itself overflows.
    """
    ratios = np.empty(orders, dtype=complex)
    ratios[0] = hankel1(0, x) / hankel1(1, x)
    for n in range(1, orders):
        # H_{n+1} / H_n = 2n/x - H_{n-1} / H_n
        ratios[n] = 1.0 / (2.0 * n / x - ratios[n - 1])
    return ratios


def dtn_symbols(modes: int, k: float, radius: float) -> np.ndarray:
    """
    Symbols ``k H_n'(kR) / H_n(kR)`` for ``n = -modes .. modes``.

    Args:
        modes: Truncation order.
        k: Wavenumber.
        radius: Circle radius.

    Returns:
        Complex array of length ``2 * modes + 1``; symbols depend on ``|n|``.
    """
    x = k * radius
    orders = np.arange(modes + 1)
    symbols = np.empty(modes + 1, dtype=complex)
    # H_0' = -H_1
    symbols[0] = -k * hankel1(1, x) / hankel1(0, x)
    if modes > 0:
        # H_n' / H_n = H_{n-1} / H_n - n / x
        symbols[1:] = k * (hankel_ratios(modes, x) - orders[1:] / x)
    return np.concatenate([symbols[:0:-1], symbols])


def dtn_symbol(n: int, k: float, radius: float) -> complex:
    return complex(dtn_symbols(abs(n), k, radius)[-1])


def default_modes(k: float, radius: float) -> int:
    return math.ceil(k * radius) + 16


def fourier_moments(outer: BoundarySpace, modes: int) -> np.ndarray:
    """Moments ``C[n, a] = int phi_a exp(-i n theta) ds`` for ``n = -modes .. modes``."""
    theta = np.arctan2(outer.points[..., 1], outer.points[..., 0])
    orders = np.arange(-modes, modes + 1)
    waves = np.exp(-1j * orders[:, None, None] * theta[None, :, :])
    local = np.einsum("neq,eq,qa->nea", waves, outer.weights, outer.shape)

    moments = np.zeros((len(orders), outer.ndof), dtype=complex)
    for a in range(outer.local_dofs.shape[1]):
        np.add.at(moments.T, outer.local_dofs[:, a], local[:, :, a].T)
    return moments


def dtn_matrix(outer: BoundarySpace, k: float, radius: float, modes: int) -> np.ndarray:
    """
    Dense Galerkin matrix of the DtN map on the outer boundary space.

    Entry ``[b, a]`` is ``<S phi_a, phi_b>``.
    """
    moments = fourier_moments(outer, modes)
    symbols = dtn_symbols(modes, k, radius)
    return moments[::-1].T @ (symbols[:, None] * moments) / (2.0 * math.pi * radius)


def circle_coefficients(
    outer: BoundarySpace, values: np.ndarray, radius: float, modes: int
) -> np.ndarray:
    """Fourier coefficients of a trace on the outer circle, ``n = -modes .. modes``."""
    return fourier_moments(outer, modes) @ values / (2.0 * math.pi * radius)


def exterior_series(
    coefficients: np.ndarray, k: float, radius: float, points: np.ndarray
) -> np.ndarray:
    """
    Radiating continuation ``sum c_n H_n(k r) / H_n(k R) exp(i n theta)``.

    Args:
        coefficients: Trace coefficients on the circle of radius ``radius``.
        k: Wavenumber.
        radius: Circle radius.
        points: Points with ``|x| >= radius``, shape ``(P, 2)``.
    """
    modes = (len(coefficients) - 1) // 2
    orders = np.arange(-modes, modes + 1)
    r = np.linalg.norm(points, axis=-1)
    theta = np.arctan2(points[..., 1], points[..., 0])
    with np.errstate(over="ignore", invalid="ignore"):
        ratio = hankel1(orders[None, :], k * r[:, None]) / hankel1(orders, k * radius)[None, :]
    ratio = np.nan_to_num(ratio, nan=0.0, posinf=0.0, neginf=0.0)
    return np.sum(ratio * coefficients * np.exp(1j * np.outer(theta, orders)), axis=1)


def exterior_far_field(
    coefficients: np.ndarray, k: float, radius: float, angles: np.ndarray
) -> np.ndarray:
    """Far-field pattern of the radiating continuation of a circle trace."""
    modes = (len(coefficients) - 1) // 2
    orders = np.arange(-modes, modes + 1)
    with np.errstate(over="ignore"):
        inverse = 1.0 / hankel1(orders, k * radius)
    factor = math.sqrt(2.0 / (math.pi * k)) * np.exp(-0.25j * math.pi)
    weights = factor * coefficients * (-1j) ** orders * inverse
    return np.exp(1j * np.outer(angles, orders)) @ weights
