"""Composite-trapezoid quadrature and the norms built on it.

The same rule is used inside the reaction term and for every reported
diagnostic, so the mass the solver sees and the mass in series.csv agree
bit for bit.
"""
from functools import lru_cache

import numpy as np

from .core import GridSpec, ScalarField
from .errors import InvalidOrder


@lru_cache(maxsize=32)
def _weights(grid: GridSpec) -> np.ndarray:
    w1 = np.ones(grid.N)
    w1[0] = w1[-1] = 0.5
    w = w1 if grid.dim == 1 else np.outer(w1, w1)
    w = w * grid.h**grid.dim
    w.setflags(write=False)
    return w


def quadrature_weights(grid: GridSpec) -> np.ndarray:
    """Trapezoid weights: corners h^d/4, edges h^d/2, interior h^d."""
    return _weights(grid)


def integrate(grid: GridSpec, values: np.ndarray) -> float:
    # np.sum is pairwise and order-fixed for a given shape
    return float(np.sum(_weights(grid) * values))


def mass(u: ScalarField) -> float:
    return integrate(u.grid, u.values)


def power(values: np.ndarray, p: float) -> np.ndarray:
    """values**p with u^0 == 1 and negative entries clamped for non-integer p."""
    if p == 0:
        return np.ones_like(values)
    if float(p).is_integer():
        return values ** int(p)
    return np.maximum(values, 0.0) ** p


def integral_of_power(u: ScalarField, p: float) -> float:
    """Trapezoid integral of u^p under the same convention as the reaction term."""
    return integrate(u.grid, power(u.values, p))


def lk_norm(u: ScalarField, k: float) -> float:
    if not k >= 1:
        raise InvalidOrder(f"L^k norm needs k >= 1, got {k}")
    vals = u.values
    vals = np.abs(vals) if float(k).is_integer() else np.maximum(vals, 0.0)
    return integrate(u.grid, vals**k) ** (1.0 / k)


def l2_norm(u: ScalarField) -> float:
    return lk_norm(u, 2)


def linf(u: ScalarField) -> float:
    return float(np.max(np.abs(u.values)))


def has_negative(u: ScalarField) -> bool:
    return bool(np.any(u.values < 0))
