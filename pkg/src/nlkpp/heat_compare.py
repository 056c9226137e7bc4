"""Compare the nonlocal solution u with a pure heat solution v of equal mass.

Both are advanced by the same stepper, so discretisation error largely
cancels and the difference isolates the reaction term. The tracked
quantity is d(t) = || u - v - (1 - m0) ||_L2, which tends to zero since u
relaxes to the unit-mass constant while v keeps mass m0.
"""
import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import HEAT, KPP, GridSpec, ScalarField, SimParams, build_field
from .errors import InsufficientData, MassMismatch
from .functionals import integrate, mass
from .runner import Stepper

LOG_FLOOR = 1e-15


@dataclass
class DecaySeries:
    t: list = field(default_factory=list)
    d: list = field(default_factory=list)

    def append(self, t, d):
        if self.t and not t > self.t[-1]:
            raise ValueError("decay series times must increase")
        if not d >= 0:
            raise ValueError("distance must be nonnegative")
        self.t.append(float(t))
        self.d.append(float(d))

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "d", "log_d"])
            for t, d in zip(self.t, self.d):
                w.writerow(["%.17g" % t, "%.17g" % d, "%.17g" % math.log(max(d, LOG_FLOOR))])


def offset_distance(u: np.ndarray, v: np.ndarray, m0: float, grid: GridSpec) -> float:
    diff = u - v - (1.0 - m0)
    return math.sqrt(integrate(grid, diff * diff))


def run_pair(ic_u, ic_v, grid: GridSpec, params: SimParams, mass_tol: float = 1e-6) -> DecaySeries:
    u0 = ic_u if isinstance(ic_u, ScalarField) else build_field(ic_u, grid)
    v0 = ic_v if isinstance(ic_v, ScalarField) else build_field(ic_v, grid)
    m0, mv = mass(u0), mass(v0)
    if abs(m0 - mv) > mass_tol:
        raise MassMismatch(f"initial masses differ: u {m0:.12g}, v {mv:.12g}")

    pu = replace(params, mode=KPP)
    su, sv = Stepper(u0, pu), Stepper(v0, replace(params, mode=HEAT))
    out = DecaySeries()
    out.append(0.0, offset_distance(u0.values, v0.values, m0, grid))
    levels = list(params.time_levels())
    for i, (t, dt) in enumerate(levels, start=1):
        u = su.step(dt, t)
        v = sv.step(dt, t)
        if i % params.record_every == 0 or i == len(levels):
            out.append(t, offset_distance(u.values, v.values, m0, grid))
    return out


@dataclass(frozen=True)
class ExpFit:
    C1: float
    C2: float
    r_squared: float


def fit_exponential(series: DecaySeries, window=None, min_samples: int = 5) -> ExpFit:
    """Least-squares fit of log d = log C1 - C2 t over ``window``.

    The window defaults to the second half of the series' time span.
    """
    t = np.asarray(series.t, dtype=float)
    d = np.asarray(series.d, dtype=float)
    if window is None:
        window = (0.5 * (t[0] + t[-1]) if len(t) else 0.0, t[-1] if len(t) else 0.0)
    ta, tb = window
    sel = (t >= ta - 1e-12) & (t <= tb + 1e-12)
    if sel.sum() < min_samples:
        raise InsufficientData(f"{int(sel.sum())} samples in window {window}, need {min_samples}")
    tw = t[sel]
    y = np.log(np.maximum(d[sel], LOG_FLOOR))
    A = np.column_stack([np.ones_like(tw), tw])
    (intercept, slope), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - (intercept + slope * tw)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ExpFit(C1=math.exp(intercept), C2=-float(slope), r_squared=r2)
