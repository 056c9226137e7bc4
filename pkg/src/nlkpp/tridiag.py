"""Thomas algorithm for tridiagonal line solves.

No pivoting: the ADI systems are diagonally dominant in the intended regime,
and a vanishing pivot raises :class:`ZeroPivot` rather than producing inf/nan.
"""
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ValidationError, ZeroPivot

PIVOT_RTOL = 1e-14


@dataclass(frozen=True)
class TridiagonalSystem:
    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        M = len(self.diag)
        if M < 1:
            raise ValidationError("empty tridiagonal system")
        if len(self.lower) != M - 1 or len(self.upper) != M - 1 or len(self.rhs) != M:
            raise ValidationError("inconsistent tridiagonal band lengths")
        for arr in (self.lower, self.diag, self.upper, self.rhs):
            if not np.all(np.isfinite(arr)):
                raise ValidationError("tridiagonal system has non-finite entries")

    def matvec(self, x):
        y = self.diag * x
        y[:-1] += self.upper * x[1:]
        y[1:] += self.lower * x[:-1]
        return y

    def dominance_margin(self) -> float:
        off = np.zeros_like(self.diag)
        off[:-1] += np.abs(self.upper)
        off[1:] += np.abs(self.lower)
        return float(np.min(np.abs(self.diag) - off))


@njit(cache=True)
def _thomas_batch(lower, diag, upper, rhs, out):
    """Solve L independent systems stored row-wise. Returns index of the
    first failing line (pivot below tolerance) or -1."""
    L, M = diag.shape
    cp = np.empty(M)
    dp = np.empty(M)
    for line in range(L):
        scale = 0.0
        for i in range(M):
            a = abs(diag[line, i])
            if a > scale:
                scale = a
        tol = PIVOT_RTOL * scale
        piv = diag[line, 0]
        if not abs(piv) > tol:
            return line
        if M > 1:
            cp[0] = upper[line, 0] / piv
        dp[0] = rhs[line, 0] / piv
        for i in range(1, M):
            piv = diag[line, i] - lower[line, i - 1] * cp[i - 1]
            if not abs(piv) > tol:
                return line
            if i < M - 1:
                cp[i] = upper[line, i] / piv
            dp[i] = (rhs[line, i] - lower[line, i - 1] * dp[i - 1]) / piv
        out[line, M - 1] = dp[M - 1]
        for i in range(M - 2, -1, -1):
            out[line, i] = dp[i] - cp[i] * out[line, i + 1]
    return -1


def thomas_batch(lower, diag, upper, rhs):
    """Solve many tridiagonal systems at once; every argument is 2-D with one
    system per row (off-diagonals have M-1 columns)."""
    diag = np.ascontiguousarray(diag, dtype=float)
    L, M = diag.shape
    lower = np.ascontiguousarray(lower, dtype=float).reshape(L, M - 1)
    upper = np.ascontiguousarray(upper, dtype=float).reshape(L, M - 1)
    rhs = np.ascontiguousarray(rhs, dtype=float)
    out = np.empty((L, M))
    bad = _thomas_batch(lower, diag, upper, rhs, out)
    if bad >= 0:
        raise ZeroPivot(f"pivot below {PIVOT_RTOL:g}*max|diag| in line {bad}")
    return out


def thomas_solve(sys: TridiagonalSystem) -> np.ndarray:
    return thomas_batch(sys.lower[None, :], sys.diag[None, :], sys.upper[None, :], sys.rhs[None, :])[0]
