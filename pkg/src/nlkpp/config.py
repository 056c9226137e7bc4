"""Run configuration: a flat ``key = value`` text format with dotted keys.

Example::

    # case 1
    grid.dim = 2
    grid.b = 1
    grid.h = 0.015625
    params.alpha = 1.5
    params.tau = 0.001
    params.t_final = 20
    ic.kind = poly_product
    ic.c_x = 0.5
    ic.c_y = 0
    checks.m0 = 0.5
"""
from dataclasses import dataclass, field, fields, replace
from typing import Optional

from .core import (
    CharacteristicBlock,
    Constant,
    FromFile,
    GridSpec,
    HeatEigenmode,
    PolyProductCase1,
    SimParams,
    build_grid,
)
from .errors import NlkppError, ParseError, UnknownPreset, ValidationError

IC_KINDS = {
    "poly_product": (PolyProductCase1, ("c_x", "c_y")),
    "block": (CharacteristicBlock, ("x_lo", "side", "height")),
    "constant": (Constant, ("value",)),
    "heat_eigenmode": (HeatEigenmode, ("amplitude", "mean")),
    "file": (FromFile, ("path",)),
}
CHECK_NAMES = ("mass_bounds", "mass_decay", "mass_ode_residual")


@dataclass(frozen=True)
class Outputs:
    series_path: str = "series.csv"
    snapshot_times: tuple = ()
    snapshot_dir: str = "."
    report_path: str = "report.json"
    decay_path: str = "decay.csv"


@dataclass(frozen=True)
class Checks:
    names: tuple = CHECK_NAMES
    tol: float = 1e-3
    slack_factor: float = 1.1
    m0: Optional[float] = None  # nominal initial mass; discrete mass if unset


@dataclass(frozen=True)
class RunConfig:
    grid: GridSpec
    params: SimParams
    ic: object
    heat_ic: Optional[object] = None
    outputs: Outputs = field(default_factory=Outputs)
    checks: Checks = field(default_factory=Checks)
    name: str = ""


# --- parsing ------------------------------------------------------------------

_GRID_KEYS = {"dim": int, "b": float, "h": float}
_PARAM_KEYS = {
    "alpha": float,
    "tau": float,
    "t_final": float,
    "mode": str,
    "record_every": int,
    "blowup_threshold": float,
    "tau_warmup": float,
    "warmup_until": float,
    "lk_order": float,
}


def _floats(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(float(s) for s in text.split(","))


def _names(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


_OUTPUT_KEYS = {
    "series_path": str,
    "snapshot_times": _floats,
    "snapshot_dir": str,
    "report_path": str,
    "decay_path": str,
}
_CHECK_KEYS = {"names": _names, "tol": float, "slack_factor": float, "m0": float}
_IC_PARAMS = {"c_x": float, "c_y": float, "x_lo": float, "side": float, "height": float,
              "value": float, "amplitude": float, "mean": float, "path": str}


def _lex(text):
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, f"expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ParseError(lineno, "empty key")
        if key in entries:
            raise ParseError(lineno, f"duplicate key {key!r} (first set on line {entries[key][0]})")
        entries[key] = (lineno, value)
    return entries


def _convert(entries, section, table):
    out = {}
    prefix = section + "."
    for key in [k for k in entries if k.startswith(prefix)]:
        lineno, raw = entries.pop(key)
        name = key[len(prefix):]
        if name not in table:
            raise ParseError(lineno, f"unknown key {key!r}")
        try:
            out[name] = table[name](raw)
        except ValueError as exc:
            raise ParseError(lineno, f"bad value for {key}: {exc}") from None
    return out


def _build_ic(entries, section):
    kind_entry = entries.pop(section + ".kind", None)
    params = _convert(entries, section, _IC_PARAMS)
    if kind_entry is None:
        if params:
            raise ValidationError(f"{section}.* given without {section}.kind")
        return None
    lineno, kind = kind_entry
    if kind not in IC_KINDS:
        raise ParseError(lineno, f"unknown {section}.kind {kind!r}; choose from {sorted(IC_KINDS)}")
    cls, allowed = IC_KINDS[kind]
    extra = set(params) - set(allowed)
    if extra:
        raise ValidationError(f"{section}.kind = {kind} does not take {sorted(extra)}")
    try:
        return cls(**params)
    except TypeError as exc:
        raise ValidationError(f"{section}: {exc}") from None


def parse_config(text: str) -> RunConfig:
    entries = _lex(text)
    name = entries.pop("name", (0, ""))[1]
    grid_kw = _convert(entries, "grid", _GRID_KEYS)
    param_kw = _convert(entries, "params", _PARAM_KEYS)
    out_kw = _convert(entries, "outputs", _OUTPUT_KEYS)
    check_kw = _convert(entries, "checks", _CHECK_KEYS)
    ic = _build_ic(entries, "ic")
    heat_ic = _build_ic(entries, "heat_ic")
    if entries:
        key, (lineno, _) = next(iter(sorted(entries.items(), key=lambda kv: kv[1][0])))
        raise ParseError(lineno, f"unknown key {key!r}")

    missing = [k for k in ("dim", "b", "h") if k not in grid_kw]
    missing += [k for k in ("alpha", "tau", "t_final") if k not in param_kw]
    if missing:
        raise ValidationError(f"missing required keys: {missing}")
    if ic is None:
        raise ValidationError("missing ic.kind")
    try:
        grid = build_grid(grid_kw["dim"], grid_kw["b"], grid_kw["h"])
        params = SimParams(**param_kw)
    except NlkppError as exc:
        raise ValidationError(str(exc)) from None
    outputs = Outputs(**out_kw)
    checks = Checks(**check_kw)
    unknown = set(checks.names) - set(CHECK_NAMES)
    if unknown:
        raise ValidationError(f"unknown checks {sorted(unknown)}")
    if any(not 0 <= s <= params.t_final for s in outputs.snapshot_times):
        raise ValidationError("snapshot_times must lie in [0, t_final]")
    if checks.tol < 0 or checks.slack_factor <= 0:
        raise ValidationError("checks.tol must be >= 0 and checks.slack_factor > 0")
    return RunConfig(grid=grid, params=params, ic=ic, heat_ic=heat_ic, outputs=outputs, checks=checks, name=name)


# --- serialisation ------------------------------------------------------------

def _fmt(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not part of the format")
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, tuple):
        return ", ".join(_fmt(x) for x in v)
    return str(v)


def _ic_lines(section, ic):
    kind = next(k for k, (cls, _) in IC_KINDS.items() if isinstance(ic, cls))
    lines = [f"{section}.kind = {kind}"]
    for f in fields(ic):
        lines.append(f"{section}.{f.name} = {_fmt(getattr(ic, f.name))}")
    return lines


def serialize(cfg: RunConfig) -> str:
    lines = []
    if cfg.name:
        lines.append(f"name = {cfg.name}")
    g = cfg.grid
    lines += [f"grid.dim = {g.dim}", f"grid.b = {_fmt(g.b)}", f"grid.h = {_fmt(g.h)}"]
    for f in fields(cfg.params):
        lines.append(f"params.{f.name} = {_fmt(getattr(cfg.params, f.name))}")
    lines += _ic_lines("ic", cfg.ic)
    if cfg.heat_ic is not None:
        lines += _ic_lines("heat_ic", cfg.heat_ic)
    for f in fields(cfg.outputs):
        lines.append(f"outputs.{f.name} = {_fmt(getattr(cfg.outputs, f.name))}")
    for f in fields(cfg.checks):
        v = getattr(cfg.checks, f.name)
        if v is not None:
            lines.append(f"checks.{f.name} = {_fmt(v)}")
    return "\n".join(lines) + "\n"


def apply_overrides(cfg: RunConfig, overrides) -> RunConfig:
    """Re-parse with ``key=value`` overrides replacing or adding lines."""
    text = serialize(cfg)
    kv = {}
    for item in overrides:
        if "=" not in item:
            raise ValidationError(f"override {item!r} is not key=value")
        k, v = (s.strip() for s in item.split("=", 1))
        kv[k] = v
    lines = []
    for line in text.splitlines():
        k = line.split("=", 1)[0].strip()
        if k in kv:
            line = f"{k} = {kv.pop(k)}"
        lines.append(line)
    lines += [f"{k} = {v}" for k, v in kv.items()]
    return parse_config("\n".join(lines) + "\n")


# --- presets ------------------------------------------------------------------

_CASE2_H = 0.01


def preset(name: str) -> RunConfig:
    if name in ("case1", "case1b"):
        m0, ic = (0.5, PolyProductCase1(0.5, 0.0)) if name == "case1" else (2.25, PolyProductCase1(1.0, 1.0))
        return RunConfig(
            grid=build_grid(2, 1.0, 1 / 64),
            params=SimParams(alpha=1.5, tau=1e-3, t_final=20.0, record_every=1),
            ic=ic,
            outputs=Outputs(snapshot_times=(0.5, 2.0, 7.0) if name == "case1" else ()),
            checks=Checks(m0=m0),
            name=name,
        )
    if name == "case2":
        return RunConfig(
            grid=build_grid(2, 1.0, _CASE2_H),
            # fine warm-up resolves the collapse of the spike; see README
            params=SimParams(alpha=3.0, tau=1e-3, t_final=10.0, record_every=10,
                             blowup_threshold=1e8, tau_warmup=1e-6, warmup_until=1e-3),
            # height 1/(40 h^2) = 250 on a 5h x 5h block
            ic=CharacteristicBlock(x_lo=0.3, side=5 * _CASE2_H, height=250.0),
            outputs=Outputs(snapshot_times=(1e-4,)),
            checks=Checks(names=("mass_bounds", "mass_decay"), m0=0.625),
            name=name,
        )
    if name == "case3":
        return RunConfig(
            grid=build_grid(1, 1.0, 0.01),
            # the block data has a steep initial layer; resolve it before switching to tau
            params=SimParams(alpha=2.0, tau=1e-3, t_final=20.0, record_every=1,
                             tau_warmup=1e-5, warmup_until=0.01),
            ic=CharacteristicBlock(x_lo=0.3, side=0.05, height=10.0),
            checks=Checks(m0=0.5),
            name=name,
        )
    raise UnknownPreset(name)


PRESETS = ("case1", "case1b", "case2", "case3")


def with_outdir(cfg: RunConfig, outdir) -> RunConfig:
    """Prefix relative output paths with ``outdir``."""
    import os

    def fix(p):
        return p if os.path.isabs(p) else os.path.join(str(outdir), p)

    o = cfg.outputs
    return replace(cfg, outputs=replace(
        o,
        series_path=fix(o.series_path),
        snapshot_dir=fix(o.snapshot_dir),
        report_path=fix(o.report_path),
        decay_path=fix(o.decay_path),
    ))
