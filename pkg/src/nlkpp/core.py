"""Grid, field, parameter and time-series containers.

Everything here is an immutable value object: fields hold read-only numpy
arrays and the dataclasses are frozen.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .errors import CorruptField, FileError, NonIntegralRatio, ValidationError

KPP = "nonlocal-kpp"
HEAT = "heat"
MODES = (KPP, HEAT)


@dataclass(frozen=True)
class GridSpec:
    dim: int
    b: float
    h: float
    N: int

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.dim

    @property
    def nodes(self) -> np.ndarray:
        """Node coordinates along one axis; first node is 0, last is exactly b."""
        x = np.arange(self.N, dtype=float) * self.h
        x[-1] = self.b
        return x

    def mesh(self):
        """Coordinate arrays broadcastable to ``shape`` (ij indexing)."""
        x = self.nodes
        if self.dim == 1:
            return (x,)
        return tuple(np.meshgrid(x, x, indexing="ij"))


def build_grid(dim: int, b: float, h: float) -> GridSpec:
    if dim not in (1, 2):
        raise ValidationError(f"dim must be 1 or 2, got {dim}")
    if not (b > 0 and h > 0):
        raise ValidationError(f"b and h must be positive (b={b}, h={h})")
    ratio = b / h
    n_cells = round(ratio)
    if n_cells < 1 or abs(ratio - n_cells) > 1e-12 * ratio:
        raise NonIntegralRatio(f"b/h = {ratio!r} is not a whole number")
    return GridSpec(dim=int(dim), b=float(b), h=float(h), N=int(n_cells) + 1)


class ScalarField:
    """Nodal values of u on a uniform grid. Values are read-only and finite."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: GridSpec, values):
        arr = np.array(values, dtype=float)
        if arr.shape != grid.shape:
            raise CorruptField(f"field shape {arr.shape} does not match grid {grid.shape}")
        if not np.all(np.isfinite(arr)):
            raise CorruptField("field contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarField is immutable")

    def __repr__(self):
        return f"ScalarField(dim={self.grid.dim}, N={self.grid.N})"

    def with_values(self, values) -> "ScalarField":
        return ScalarField(self.grid, values)


@dataclass(frozen=True)
class SimParams:
    alpha: float
    tau: float
    t_final: float
    mode: str = KPP
    record_every: int = 1
    blowup_threshold: float = 1e8
    # optional fine initial phase for stiff transients
    tau_warmup: float = 0.0
    warmup_until: float = 0.0
    lk_order: float = 2.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValidationError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.alpha >= 0:
            raise ValidationError(f"alpha must be >= 0, got {self.alpha}")
        for name in ("tau", "t_final", "blowup_threshold"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be > 0")
        if self.record_every < 1:
            raise ValidationError("record_every must be >= 1")
        if self.warmup_until > 0 and not self.tau_warmup > 0:
            raise ValidationError("warmup_until set without a positive tau_warmup")
        if self.lk_order < 1:
            raise ValidationError("lk_order must be >= 1")

    def time_levels(self):
        """Yield (t_new, dt) for every step up to t_final.

        Times are computed as phase_start + k*dt rather than accumulated, and
        the final step is truncated to land exactly on t_final.
        """
        t_end = self.t_final
        phases = []
        if self.warmup_until > 0:
            phases.append((min(self.warmup_until, t_end), self.tau_warmup))
        phases.append((t_end, self.tau))
        t0 = 0.0
        for stop, dt in phases:
            if stop <= t0:
                continue
            n_full = math.floor((stop - t0) / dt + 1e-9)
            t_prev = t0
            for k in range(1, n_full + 1):
                t = t0 + k * dt
                if k == n_full and abs(stop - t) <= 1e-9 * dt:
                    t = stop
                yield t, t - t_prev
                t_prev = t
            if stop - t_prev > 1e-12 * max(1.0, stop):
                yield stop, stop - t_prev
                t_prev = stop
            t0 = t_prev


# --- initial conditions -------------------------------------------------------

@dataclass(frozen=True)
class PolyProductCase1:
    """(-2x^3+3x^2+c_x)(-2y^3+3y^2+c_y); in 1D only the x factor."""
    c_x: float = 0.5
    c_y: float = 0.0


@dataclass(frozen=True)
class CharacteristicBlock:
    """``height`` on the block [x_lo, x_lo+side)^dim, zero elsewhere."""
    x_lo: float
    side: float
    height: float


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class HeatEigenmode:
    """mean + amplitude * prod_i cos(pi x_i / b)."""
    amplitude: float = 0.1
    mean: float = 1.0


@dataclass(frozen=True)
class FromFile:
    path: str


InitialConditionSpec = Union[PolyProductCase1, CharacteristicBlock, Constant, HeatEigenmode, FromFile]


def _cubic(x, c):
    return -2.0 * x**3 + 3.0 * x**2 + c


def build_field(ic: InitialConditionSpec, grid: GridSpec) -> ScalarField:
    coords = grid.mesh()
    if isinstance(ic, PolyProductCase1):
        vals = _cubic(coords[0], ic.c_x)
        if grid.dim == 2:
            vals = vals * _cubic(coords[1], ic.c_y)
    elif isinstance(ic, CharacteristicBlock):
        if ic.side <= 0 or ic.height < 0:
            raise ValidationError("block needs side > 0 and height >= 0")
        # node-snapping tolerance, keeps 0.3/0.01-style ratios on the right side
        eps = 1e-9 * grid.h
        inside = np.ones(grid.shape, dtype=bool)
        for c in coords:
            inside &= (c >= ic.x_lo - eps) & (c < ic.x_lo + ic.side - eps)
        vals = np.where(inside, float(ic.height), 0.0)
    elif isinstance(ic, Constant):
        vals = np.full(grid.shape, float(ic.value))
    elif isinstance(ic, HeatEigenmode):
        vals = np.full(grid.shape, 1.0)
        for c in coords:
            vals = vals * np.cos(np.pi * c / grid.b)
        vals = ic.mean + ic.amplitude * vals
    elif isinstance(ic, FromFile):
        return read_snapshot(ic.path, grid)
    else:
        raise ValidationError(f"unknown initial condition {ic!r}")
    return ScalarField(grid, vals)


# --- snapshot CSV -------------------------------------------------------------

def write_snapshot(path, u: ScalarField) -> None:
    vals = np.atleast_2d(u.values)
    with open(path, "w", newline="") as fh:
        for row in vals:
            fh.write(",".join("%.17g" % v for v in row) + "\n")


def read_snapshot(path, grid: GridSpec) -> ScalarField:
    try:
        with open(path, newline="") as fh:
            rows = [[float(s) for s in row] for row in csv.reader(fh) if row]
    except (OSError, ValueError) as exc:
        raise FileError(f"cannot read snapshot {path}: {exc}") from exc
    arr = np.array(rows, dtype=float) if rows else np.empty((0, 0))
    if grid.dim == 1 and arr.ndim == 2 and arr.shape[0] == 1:
        arr = arr[0]
    if arr.shape != grid.shape:
        raise FileError(f"snapshot {path} has shape {arr.shape}, grid expects {grid.shape}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise FileError(f"snapshot {path} has non-finite or negative entries")
    return ScalarField(grid, arr)


# --- diagnostics time series --------------------------------------------------

SERIES_COLUMNS = ("t", "mass", "max_u", "min_u", "l2_norm", "lk_norm", "int_u_alpha")


@dataclass(frozen=True)
class MassRecord:
    t: float
    mass: float
    max_u: float
    min_u: float
    l2_norm: float
    lk_norm: float
    int_u_alpha: float
    negativity_flag: bool = False


@dataclass
class MassSeries:
    records: list = field(default_factory=list)

    def append(self, rec: MassRecord) -> None:
        if self.records and not rec.t > self.records[-1].t:
            raise ValidationError(f"series times must increase ({rec.t} after {self.records[-1].t})")
        values = (rec.mass, rec.max_u, rec.min_u, rec.l2_norm, rec.lk_norm, rec.int_u_alpha)
        if not all(math.isfinite(v) for v in values):
            raise CorruptField(f"non-finite diagnostics at t={rec.t}")
        self.records.append(rec)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    @property
    def t(self):
        return self.column("t")

    @property
    def mass(self):
        return self.column("mass")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(SERIES_COLUMNS) + "\n")
            for r in self.records:
                fh.write(",".join("%.17g" % getattr(r, c) for c in SERIES_COLUMNS) + "\n")

    @classmethod
    def from_csv(cls, path) -> "MassSeries":
        try:
            with open(path, newline="") as fh:
                reader = csv.DictReader(fh)
                missing = set(SERIES_COLUMNS) - set(reader.fieldnames or ())
                if missing:
                    raise FileError(f"{path}: missing columns {sorted(missing)}")
                series = cls()
                for row in reader:
                    series.append(MassRecord(**{c: float(row[c]) for c in SERIES_COLUMNS}))
        except (OSError, ValueError) as exc:
            if isinstance(exc, FileError):
                raise
            raise FileError(f"cannot read series {path}: {exc}") from exc
        return series

    @classmethod
    def from_records(cls, records: Iterable[MassRecord]) -> "MassSeries":
        s = cls()
        for r in records:
            s.append(r)
        return s
