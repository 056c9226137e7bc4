"""Second differences and the one-sided Neumann boundary closure."""
import numpy as np

from .errors import ValidationError

MIN_NODES = 4


def require_nodes(N):
    if N < MIN_NODES:
        raise ValidationError(f"the boundary closure needs at least {MIN_NODES} nodes per axis, got {N}")


def d2_interior(u, h, axis):
    """Centered second difference at nodes 1..N-2 along ``axis``; other axes untouched."""
    u = np.moveaxis(u, axis, 0)
    d = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    return np.moveaxis(d, 0, axis)


def extrapolate_lo(a1, a2):
    return (4.0 * a1 - a2) / 3.0


def close_1d(u):
    """In place: u_1 = (4u_2 - u_3)/3, u_N = (4u_{N-1} - u_{N-2})/3."""
    u[0] = extrapolate_lo(u[1], u[2])
    u[-1] = extrapolate_lo(u[-2], u[-3])
    return u


def close_2d(u):
    """In place: edges from one-sided extrapolation of the interior, corners
    as the average of the x- and y-direction extrapolations."""
    # x-direction edges (i = 1, N) for interior j
    u[0, 1:-1] = extrapolate_lo(u[1, 1:-1], u[2, 1:-1])
    u[-1, 1:-1] = extrapolate_lo(u[-2, 1:-1], u[-3, 1:-1])
    # y-direction edges (j = 1, N) for interior i
    u[1:-1, 0] = extrapolate_lo(u[1:-1, 1], u[1:-1, 2])
    u[1:-1, -1] = extrapolate_lo(u[1:-1, -2], u[1:-1, -3])
    for ci, di in ((0, 1), (-1, -1)):
        for cj, dj in ((0, 1), (-1, -1)):
            along_x = extrapolate_lo(u[ci + di, cj], u[ci + 2 * di, cj])
            along_y = extrapolate_lo(u[ci, cj + dj], u[ci, cj + 2 * dj])
            u[ci, cj] = 0.5 * (along_x + along_y)
    return u


def close(u):
    return close_1d(u) if u.ndim == 1 else close_2d(u)


def neumann_line_bands(M, r, shift):
    """Bands of [1 - r*D2 - shift] on M interior unknowns with the
    extrapolated end values eliminated from the first and last rows.

    ``shift`` is an array (..., M) of pointwise diagonal terms (tau/2 * f').
    Returns lower, diag, upper broadcast to shift's leading shape.
    """
    shift = np.asarray(shift, dtype=float)
    lead = shift.shape[:-1]
    diag = (1.0 + 2.0 * r) - shift
    lower = np.full(lead + (M - 1,), -r)
    upper = np.full(lead + (M - 1,), -r)
    # u_0 = (4u_1 - u_2)/3 turns r(u_2 - 2u_1 + u_0) into (2r/3)(u_2 - u_1)
    diag[..., 0] = 1.0 + 2.0 * r / 3.0 - shift[..., 0]
    diag[..., -1] = 1.0 + 2.0 * r / 3.0 - shift[..., -1]
    upper[..., 0] = -2.0 * r / 3.0
    lower[..., -1] = -2.0 * r / 3.0
    return lower, diag, upper


def dominance_margin(lower, diag, upper):
    off = np.zeros_like(diag)
    off[..., :-1] += np.abs(upper)
    off[..., 1:] += np.abs(lower)
    return float(np.min(np.abs(diag) - off))
