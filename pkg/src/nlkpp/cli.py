"""Command line entry point.

    nlkpp run <config>
    nlkpp preset <name> [--override key=value ...]
    nlkpp compare-heat <config>
    nlkpp converge <config> --axis space|time
    nlkpp check <series.csv> --m0 <v> --alpha <v>

Exit codes: 0 success, 1 error or failed check, 2 blow-up detected.
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, replace

from .checks import (
    CheckReport,
    check_mass_bounds,
    check_mass_decay,
    check_mass_ode_residual,
    detect_blowup,
    estimate_order,
    write_report,
)
from .config import PRESETS, apply_overrides, parse_config, preset, serialize, with_outdir
from .core import Constant, MassSeries, build_field, build_grid, write_snapshot
from .errors import BlowupDetected, NlkppError
from .functionals import mass
from .heat_compare import fit_exponential, run_pair
from .runner import simulate

log = logging.getLogger("nlkpp")

EXIT_OK, EXIT_ERROR, EXIT_BLOWUP = 0, 1, 2


def _ensure_dir(path):
    d = os.path.dirname(path)
    if d:
        os.makedirs(d, exist_ok=True)


def _snapshot_name(t):
    return f"u_t{t:g}.csv"


def series_checks(series, cfg, m0=None):
    """Run the configured checks on a recorded series."""
    c = cfg.checks
    m0 = c.m0 if m0 is None else m0
    if m0 is None:
        m0 = series.mass[0]
    reports = []
    if "mass_bounds" in c.names:
        reports.append(check_mass_bounds(series, m0, c.tol))
    if "mass_decay" in c.names:
        reports.append(check_mass_decay(series, m0, cfg.params.alpha, c.slack_factor))
    if "mass_ode_residual" in c.names:
        reports.append(check_mass_ode_residual(series, tau=cfg.params.tau))
    return reports


def execute(cfg):
    """Simulate a config, write all outputs, return (exit code, result, reports)."""
    u0 = build_field(cfg.ic, cfg.grid)
    o = cfg.outputs
    os.makedirs(o.snapshot_dir, exist_ok=True)

    def snap(t, u):
        write_snapshot(os.path.join(o.snapshot_dir, _snapshot_name(t)), u)

    result = simulate(u0, cfg.params, snapshot_times=o.snapshot_times, on_snapshot=snap)
    _ensure_dir(o.series_path)
    result.series.to_csv(o.series_path)

    verdict = detect_blowup(result, cfg.params.blowup_threshold)
    reports = [CheckReport(
        "global_existence",
        verdict.is_global,
        0.0 if verdict.is_global else -1.0,
        result.t_reached if verdict.is_global else verdict.t,
        f"{verdict}; reached t={result.t_reached:.6g}, min dominance margin {result.min_dominance:.6g}",
    )]
    if not verdict.is_global:
        _ensure_dir(o.report_path)
        write_report(o.report_path, reports)
        return EXIT_BLOWUP, result, reports
    reports += series_checks(result.series, cfg)
    _ensure_dir(o.report_path)
    write_report(o.report_path, reports)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_ERROR
    return code, result, reports


def run_main(cfg) -> int:
    try:
        code, result, reports = execute(cfg)
    except BlowupDetected as exc:
        log.error("%s", exc)
        return EXIT_BLOWUP
    except NlkppError as exc:
        log.error("%s", exc)
        return EXIT_ERROR
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.check_name}: worst_slack={r.worst_slack:.3e} at t={r.location_t:.6g}")
    return code


def compare_heat_main(cfg, window=None):
    u0 = build_field(cfg.ic, cfg.grid)
    heat_ic = cfg.heat_ic or Constant(mass(u0) / cfg.grid.b**cfg.grid.dim)
    series = run_pair(u0, heat_ic, cfg.grid, cfg.params)
    _ensure_dir(cfg.outputs.decay_path)
    series.to_csv(cfg.outputs.decay_path)
    fit = fit_exponential(series, window)
    print(json.dumps(asdict(fit)))
    return series, fit


def ladder(cfg, axis, levels=3):
    """Configs refined by factor 2 per level along ``axis``."""
    out = []
    for k in range(levels):
        s = 2**k
        if axis == "space":
            out.append(replace(cfg, grid=build_grid(cfg.grid.dim, cfg.grid.b, cfg.grid.h / s)))
        else:
            out.append(replace(cfg, params=replace(cfg.params, tau=cfg.params.tau / s)))
    return out


def converge_main(cfg, axis):
    fields_ = []
    for c in ladder(cfg, axis):
        res = simulate(build_field(c.ic, c.grid), c.params)
        if res.blowup_t is not None:
            raise BlowupDetected(res.blowup_t, res.blowup_max or float("inf"))
        fields_.append(res.field)
    p = estimate_order(*fields_, refine_axis=axis)
    return p


def _parser():
    ap = argparse.ArgumentParser(prog="nlkpp", description="Nonlocal Fisher-KPP simulator and checks")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("run", help="run a config file")
    p.add_argument("config")
    p.add_argument("--outdir", default=None)

    p = sub.add_parser("preset", help="run one of the built-in cases")
    p.add_argument("name", choices=PRESETS)
    p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--outdir", default=None)
    p.add_argument("--print-config", action="store_true", help="print the config and exit")

    p = sub.add_parser("compare-heat", help="track ||u - v - (1 - m0)|| against a heat solution")
    p.add_argument("config")
    p.add_argument("--window", nargs=2, type=float, default=None, metavar=("T_A", "T_B"))
    p.add_argument("--outdir", default=None)

    p = sub.add_parser("converge", help="Richardson order from a 3-level ladder")
    p.add_argument("config")
    p.add_argument("--axis", choices=("space", "time"), required=True)
    p.add_argument("--outdir", default=None)

    p = sub.add_parser("check", help="check mass laws on an existing series.csv")
    p.add_argument("series")
    p.add_argument("--m0", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--slack-factor", type=float, default=1.1)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--report", default=None)
    return ap


def _load(path, outdir):
    with open(path) as fh:
        cfg = parse_config(fh.read())
    return with_outdir(cfg, outdir) if outdir else cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.verb == "run":
            return run_main(_load(args.config, args.outdir))
        if args.verb == "preset":
            cfg = apply_overrides(preset(args.name), args.override)
            if args.print_config:
                sys.stdout.write(serialize(cfg))
                return EXIT_OK
            return run_main(with_outdir(cfg, args.outdir) if args.outdir else cfg)
        if args.verb == "compare-heat":
            cfg = _load(args.config, args.outdir)
            window = tuple(args.window) if args.window else None
            _, fit = compare_heat_main(cfg, window)
            return EXIT_OK if fit.C2 > 0 else EXIT_ERROR
        if args.verb == "converge":
            cfg = _load(args.config, args.outdir)
            p = converge_main(cfg, args.axis)
            rep = CheckReport(f"order_{args.axis}", True, p, cfg.params.t_final, f"Richardson order {p:.4f}")
            _ensure_dir(cfg.outputs.report_path)
            write_report(cfg.outputs.report_path, [rep])
            print(f"{args.axis} order: {p:.4f}")
            return EXIT_OK
        if args.verb == "check":
            series = MassSeries.from_csv(args.series)
            reports = [
                check_mass_bounds(series, args.m0, args.tol),
                check_mass_decay(series, args.m0, args.alpha, args.slack_factor),
                check_mass_ode_residual(series, tau=args.tau),
            ]
            if args.report:
                write_report(args.report, reports)
            for r in reports:
                print(f"{'PASS' if r.passed else 'FAIL'} {r.check_name}: worst_slack={r.worst_slack:.3e} at t={r.location_t:.6g}")
            return EXIT_OK if all(r.passed for r in reports) else EXIT_ERROR
    except BlowupDetected as exc:
        log.error("%s", exc)
        return EXIT_BLOWUP
    except (NlkppError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
