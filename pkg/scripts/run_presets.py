"""Run every built-in case and print a one-line summary per case.

    python3 scripts/run_presets.py --outdir runs/
"""
import argparse
import os
import time

from nlkpp.checks import detect_blowup
from nlkpp.cli import execute
from nlkpp.config import PRESETS, preset, with_outdir


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="runs")
    ap.add_argument("names", nargs="*", default=list(PRESETS))
    args = ap.parse_args()

    for name in args.names:
        cfg = with_outdir(preset(name), os.path.join(args.outdir, name))
        start = time.perf_counter()
        code, result, reports = execute(cfg)
        secs = time.perf_counter() - start
        failed = [r.check_name for r in reports if not r.passed]
        print(
            f"{name:7s} {detect_blowup(result)!s:10s} m(T)={result.series.mass[-1]:.10f} "
            f"max u={result.series.column('max_u').max():.4g} steps={result.steps} "
            f"{secs:6.1f}s exit={code} {'failed: ' + ', '.join(failed) if failed else ''}"
        )


if __name__ == "__main__":
    main()
