"""Time loop shared by the 1-D and 2-D steppers."""
import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .adi2d import adi_step
from .core import MassRecord, MassSeries, ScalarField, SimParams
from .errors import BlowupDetected
from .functionals import has_negative, integral_of_power, l2_norm, lk_norm, mass
from .solver1d import Cn1dState, cn1d_step

log = logging.getLogger(__name__)


@dataclass
class RunResult:
    field: ScalarField
    series: MassSeries
    t_reached: float
    t_final: float
    blowup_t: Optional[float] = None
    blowup_max: Optional[float] = None
    min_dominance: float = float("inf")
    steps: int = 0
    negative_steps: int = 0
    warnings: list = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.blowup_t is None


def record(u: ScalarField, t: float, params: SimParams) -> MassRecord:
    return MassRecord(
        t=t,
        mass=mass(u),
        max_u=float(u.values.max()),
        min_u=float(u.values.min()),
        l2_norm=l2_norm(u),
        lk_norm=lk_norm(u, params.lk_order),
        int_u_alpha=integral_of_power(u, params.alpha),
        negativity_flag=has_negative(u),
    )


class Stepper:
    """Holds the current field and advances it with the stepper for its
    dimension (linearized CN in 1-D, ADI in 2-D)."""

    def __init__(self, u0: ScalarField, params: SimParams):
        self.params = params
        self.field = u0
        self._state = Cn1dState.of(u0) if u0.grid.dim == 1 else None
        self.last_margin = float("inf")

    def step(self, dt: float, t: float) -> ScalarField:
        if self._state is not None:
            self._state = cn1d_step(self._state, self.params, tau=dt, t=t)
            self.field = self._state.field
        else:
            rep = adi_step(self.field, self.params, tau=dt, t=t)
            self.field = rep.new_field
            self.last_margin = rep.dominance_margin
        return self.field


def simulate(
    u0: ScalarField,
    params: SimParams,
    snapshot_times: Sequence[float] = (),
    on_snapshot: Optional[Callable[[float, ScalarField], None]] = None,
    raise_on_blowup: bool = False,
) -> RunResult:
    """Run from u0 to params.t_final, recording diagnostics every
    ``record_every`` steps and at the final time.

    A blow-up stops the run; it is reported in the result (or re-raised
    with ``raise_on_blowup``).
    """
    series = MassSeries()
    series.append(record(u0, 0.0, params))
    pending = sorted(float(s) for s in snapshot_times)
    u = u0
    if on_snapshot is not None:
        while pending and pending[0] <= 0.0:
            on_snapshot(pending.pop(0), u)

    result = RunResult(field=u0, series=series, t_reached=0.0, t_final=params.t_final)
    stepper = Stepper(u0, params)
    for t, dt in params.time_levels():
        try:
            u = stepper.step(dt, t)
            margin = stepper.last_margin
            if margin < result.min_dominance:
                result.min_dominance = margin
                if margin <= 0:
                    result.warnings.append(f"dominance margin {margin:.3e} at t={t:.6g}")
        except BlowupDetected as exc:
            exc.t = t
            result.blowup_t, result.blowup_max = t, exc.max_u
            log.info("blow-up at t=%g (max %g)", t, exc.max_u)
            if raise_on_blowup:
                raise
            break
        result.steps += 1
        if has_negative(u):
            result.negative_steps += 1
        final = abs(t - params.t_final) <= 1e-12 * max(1.0, params.t_final)
        if final or result.steps % params.record_every == 0:
            series.append(record(u, t, params))
        result.field, result.t_reached = u, t
        if on_snapshot is not None:
            while pending and pending[0] <= t + 1e-9 * dt:
                on_snapshot(pending.pop(0), u)
    return result
