"""Checks of the mass laws on recorded series, blow-up classification and
Richardson order estimates.

All checks are pure functions of their inputs; nothing is re-simulated.
"""
import json
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .core import MassSeries
from .errors import EmptySeries, MisalignedRuns


@dataclass(frozen=True)
class CheckReport:
    check_name: str
    passed: bool
    worst_slack: float
    location_t: float
    details: str = ""


def _require(series: MassSeries):
    if len(series) == 0:
        raise EmptySeries("mass series is empty")


def check_mass_bounds(series: MassSeries, m0: float, tol: float = 1e-3) -> CheckReport:
    """min{1,m0} <= m(t) <= max{1,m0}, each side relaxed by ``tol``."""
    _require(series)
    t, m = series.t, series.mass
    lo, hi = min(1.0, m0), max(1.0, m0)
    slack = np.minimum(m - lo, hi - m)
    k = int(np.argmin(slack))
    worst = float(slack[k])
    return CheckReport(
        "mass_bounds",
        worst >= -tol,
        worst,
        float(t[k]),
        f"range [{lo:.6g}, {hi:.6g}], tol {tol:g}; discrete m(0)={m[0]:.12g} vs m0={m0:.12g}",
    )


def decay_rate(m0: float, alpha: float) -> float:
    return min(1.0, m0**alpha)


def check_mass_decay(series: MassSeries, m0: float, alpha: float, slack_factor: float = 1.1) -> CheckReport:
    """|1 - m(t)| <= slack_factor |1 - m0| exp(-min{1, m0^alpha} t).

    The rate uses the nominal m0, not the discrete initial mass.
    """
    _require(series)
    t, m = series.t, series.mass
    rate = decay_rate(m0, alpha)
    envelope = slack_factor * abs(1.0 - m0) * np.exp(-rate * t)
    slack = envelope - np.abs(1.0 - m)
    k = int(np.argmin(slack))
    worst = float(slack[k])
    return CheckReport(
        "mass_decay",
        worst >= 0.0,
        worst,
        float(t[k]),
        f"rate min(1, m0^alpha)={rate:.6g}, slack_factor {slack_factor:g}; "
        f"discrete m(0)={m[0]:.12g} vs m0={m0:.12g}",
    )


def check_mass_ode_residual(series: MassSeries, int_u_alpha=None, tau: float = 0.0) -> CheckReport:
    """Compare a central difference of m(t) with (1 - m) * int u^alpha.

    ``int_u_alpha`` defaults to the series' own column. Tolerance is
    max(1e-2, 10 tau), absolute.
    """
    _require(series)
    t, m = series.t, series.mass
    q = series.column("int_u_alpha") if int_u_alpha is None else np.asarray(int_u_alpha, dtype=float)
    if len(q) != len(t):
        raise MisalignedRuns("int u^alpha samples do not match the series times")
    tol = max(1e-2, 10.0 * tau)
    if len(t) < 3:
        return CheckReport("mass_ode_residual", True, tol, float(t[0]), "fewer than 3 records, nothing to compare")
    dm = (m[2:] - m[:-2]) / (t[2:] - t[:-2])
    resid = np.abs(dm - (1.0 - m[1:-1]) * q[1:-1])
    k = int(np.argmax(resid))
    return CheckReport(
        "mass_ode_residual",
        bool(resid[k] <= tol),
        float(tol - resid[k]),
        float(t[1:-1][k]),
        f"max |m' - (1-m) int u^alpha| = {resid[k]:.3e}, tol {tol:g}",
    )


@dataclass(frozen=True)
class BlowupVerdict:
    is_global: bool
    t: Optional[float] = None

    def __str__(self):
        return "Global" if self.is_global else f"BlowupAt({self.t:.6g})"


def detect_blowup(result, threshold: Optional[float] = None) -> BlowupVerdict:
    """Classify a finished or aborted run (a :class:`runner.RunResult`)."""
    if result.blowup_t is not None:
        return BlowupVerdict(False, result.blowup_t)
    for r in result.series:
        vals = (r.mass, r.max_u, r.min_u)
        if not all(math.isfinite(v) for v in vals) or (threshold is not None and abs(r.max_u) > threshold):
            return BlowupVerdict(False, r.t)
    if result.t_reached < result.t_final * (1 - 1e-12):
        return BlowupVerdict(False, result.t_reached)
    return BlowupVerdict(True)


def _restrict(values: np.ndarray, n_coarse: int) -> np.ndarray:
    n = values.shape[0]
    if (n - 1) % (n_coarse - 1):
        raise MisalignedRuns(f"a {n}-node grid does not nest a {n_coarse}-node grid")
    s = (n - 1) // (n_coarse - 1)
    return values[(slice(None, None, s),) * values.ndim]


def estimate_order(coarse, medium, fine, refine_axis: str = "space") -> float:
    """Richardson self-convergence order log2(|c - m| / |m - f|), max norm
    on the coarse node set. Arguments are ScalarFields or arrays."""
    if refine_axis not in ("space", "time"):
        raise ValueError("refine_axis must be 'space' or 'time'")
    arrs = [np.asarray(getattr(x, "values", x), dtype=float) for x in (coarse, medium, fine)]
    if len({a.ndim for a in arrs}) != 1:
        raise MisalignedRuns("runs have different dimensions")
    n = arrs[0].shape[0]
    if refine_axis == "time":
        if not arrs[0].shape == arrs[1].shape == arrs[2].shape:
            raise MisalignedRuns("time refinement needs identical grids")
    else:
        if not (arrs[1].shape[0] - 1 == 2 * (n - 1) and arrs[2].shape[0] - 1 == 4 * (n - 1)):
            raise MisalignedRuns("space refinement needs factor-2 nested grids")
    c, m, f = (_restrict(a, n) for a in arrs)
    num = float(np.max(np.abs(c - m)))
    den = float(np.max(np.abs(m - f)))
    if den == 0.0 or num == 0.0:
        raise MisalignedRuns("differences vanish; order is undefined")
    return math.log2(num / den)


def reports_to_json(reports) -> str:
    return json.dumps([asdict(r) for r in reports], indent=2, sort_keys=False)


def write_report(path, reports) -> None:
    with open(path, "w") as fh:
        fh.write(reports_to_json(reports) + "\n")
