"""Linearized Crank-Nicolson stepper for the 1-D problem.

This is the one-dimensional reduction of the ADI scheme: no splitting is
needed, so a step is a single tridiagonal solve

    [1 - tau/2 dxx - tau/2 f'] u^{k+1} = [1 + tau/2 dxx] u^k + tau f - tau/2 f' u^k
"""
from dataclasses import dataclass

import numpy as np

from .adi2d import _check_finite
from .core import HEAT, ScalarField, SimParams
from .functionals import mass
from .reaction import reaction_arrays
from .stencil import close_1d, d2_interior, neumann_line_bands, require_nodes
from .tridiag import thomas_batch


@dataclass(frozen=True)
class Cn1dState:
    field: ScalarField
    mass: float

    @classmethod
    def of(cls, u: ScalarField) -> "Cn1dState":
        return cls(u, mass(u))


def cn1d_step(u_k: Cn1dState, params: SimParams, tau=None, t=float("nan")) -> Cn1dState:
    tau = params.tau if tau is None else tau
    grid = u_k.field.grid
    require_nodes(grid.N)
    u = u_k.field.values
    if params.mode == HEAT:
        f = fp = np.zeros_like(u)
    else:
        f, fp = reaction_arrays(u, params.alpha, u_k.mass)
    f, fp = f[1:-1], fp[1:-1]

    r = 0.5 * tau / grid.h**2
    rhs = u[1:-1] + 0.5 * tau * d2_interior(u, grid.h, axis=0) + tau * f - 0.5 * tau * fp * u[1:-1]
    lower, diag, upper = neumann_line_bands(grid.N - 2, r, 0.5 * tau * fp[None, :])

    new = np.empty_like(u)
    new[1:-1] = thomas_batch(lower, diag, upper, rhs[None, :])[0]
    close_1d(new)
    _check_finite(new, params.blowup_threshold, t)
    return Cn1dState.of(ScalarField(grid, new))
