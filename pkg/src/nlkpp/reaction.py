"""The nonlocal reaction f(u) = u^alpha (1 - m) and its frozen-mass derivative."""
from dataclasses import dataclass

import numpy as np

from .core import ScalarField
from .errors import NegativePower
from .functionals import mass, power

NEGATIVE_CLAMP = -1e-8


@dataclass(frozen=True)
class ReactionEval:
    f_field: ScalarField
    fprime_field: ScalarField
    mass_k: float


def reaction_arrays(values: np.ndarray, alpha: float, m: float):
    """Pointwise f and f' for a given (frozen) mass m."""
    non_integer = not float(alpha).is_integer()
    if non_integer and values.size and values.min() < NEGATIVE_CLAMP:
        raise NegativePower(
            f"u has a value {values.min():.3e} below {NEGATIVE_CLAMP} and alpha={alpha} is not an integer"
        )
    growth = 1.0 - m
    f = power(values, alpha) * growth
    if alpha == 0:
        fprime = np.zeros_like(values)
    else:
        # 0^(alpha-1) == 0 for 0 < alpha-1 < 1, u^0 == 1 otherwise
        fprime = alpha * power(values, alpha - 1.0) * growth
    return f, fprime


def eval_reaction(u: ScalarField, alpha: float) -> ReactionEval:
    m = mass(u)
    f, fp = reaction_arrays(u.values, alpha, m)
    return ReactionEval(ScalarField(u.grid, f), ScalarField(u.grid, fp), m)
