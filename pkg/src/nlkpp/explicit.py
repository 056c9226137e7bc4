"""Forward-Euler reference solver.

Only meant as an oracle for the implicit steppers on small grids and short
horizons. Uses the same stencils and boundary closure, so the difference
to the implicit schemes is purely temporal.
"""
import math
from dataclasses import dataclass

import numpy as np

from .adi2d import _check_finite
from .core import HEAT, ScalarField, SimParams
from .errors import CflViolation, ValidationError
from .functionals import integrate
from .reaction import reaction_arrays
from .stencil import close, d2_interior, require_nodes


@dataclass(frozen=True)
class ExplicitParams:
    tau_ref: float
    cfl_guard: bool = True

    def __post_init__(self):
        if not self.tau_ref > 0:
            raise ValidationError("tau_ref must be positive")


def _check_cfl(grid, ep: ExplicitParams):
    limit = grid.h**2 / (4 * grid.dim)
    if ep.cfl_guard and ep.tau_ref > limit * (1 + 1e-12):
        raise CflViolation(f"tau_ref={ep.tau_ref:g} exceeds h^2/(4 dim) = {limit:g}")


def _step_values(u, grid, alpha, mode, dt):
    if mode == HEAT:
        f = 0.0
    else:
        f = reaction_arrays(u, alpha, integrate(grid, u))[0]
    new = u.copy()
    inner = (slice(1, -1),) * grid.dim
    lap = np.zeros_like(u)
    for axis in range(grid.dim):
        # second difference along one axis, restricted to interior on the rest
        d = d2_interior(u, grid.h, axis)
        sl = [slice(1, -1)] * grid.dim
        sl[axis] = slice(None)
        lap[inner] += d[tuple(sl)]
    rhs = lap if mode == HEAT else lap + f
    new[inner] = u[inner] + dt * rhs[inner]
    return close(new)


def explicit_step(u_k: ScalarField, params: SimParams, ep: ExplicitParams, t=float("nan")) -> ScalarField:
    require_nodes(u_k.grid.N)
    _check_cfl(u_k.grid, ep)
    new = _step_values(u_k.values, u_k.grid, params.alpha, params.mode, ep.tau_ref)
    _check_finite(new, params.blowup_threshold, t)
    return ScalarField(u_k.grid, new)


def explicit_run(u0: ScalarField, params: SimParams, ep: ExplicitParams, t_end: float) -> ScalarField:
    """Integrate to ``t_end`` with micro-steps of tau_ref (last one truncated)."""
    require_nodes(u0.grid.N)
    _check_cfl(u0.grid, ep)
    grid = u0.grid
    n = math.floor(t_end / ep.tau_ref + 1e-9)
    u = np.array(u0.values)
    for k in range(n):
        u = _step_values(u, grid, params.alpha, params.mode, ep.tau_ref)
    rest = t_end - n * ep.tau_ref
    if rest > 1e-12 * max(1.0, t_end):
        u = _step_values(u, grid, params.alpha, params.mode, rest)
    _check_finite(u, params.blowup_threshold, t_end)
    return ScalarField(grid, u)
