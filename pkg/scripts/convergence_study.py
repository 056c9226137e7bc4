"""Self-convergence study on the heat eigenmode (space) and case1 (time).

Prints the Richardson order for a few ladders, and the error against the
exact eigenmode solution at each spatial level.
"""
import argparse
from dataclasses import replace

import numpy as np

from nlkpp.checks import estimate_order
from nlkpp.config import preset
from nlkpp.core import HEAT, HeatEigenmode, SimParams, build_field, build_grid
from nlkpp.runner import simulate


def eigenmode_runs(dim, hs, T):
    p = SimParams(alpha=1, tau=1e-3, t_final=T, mode=HEAT)
    out = []
    for h in hs:
        g = build_grid(dim, 1, h)
        u = simulate(build_field(HeatEigenmode(0.1, 1.0), g), p).field
        exact = 1 + 0.1 * np.exp(-dim * np.pi**2 * T) * np.prod([np.cos(np.pi * X) for X in g.mesh()], axis=0)
        print(f"  dim={dim} h=1/{round(1 / h)}: max error vs exact {np.max(np.abs(u.values - exact)):.3e}")
        out.append(u)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dim", type=int, choices=(1, 2), default=2)
    ap.add_argument("--t-final", type=float, default=0.1)
    args = ap.parse_args()

    inverse = [16, 32, 64, 128, 256]
    runs = eigenmode_runs(args.dim, [1 / n for n in inverse], args.t_final)
    for k in range(len(runs) - 2):
        p = estimate_order(*runs[k:k + 3], refine_axis="space")
        print(f"space order on h = 1/{inverse[k]}, 1/{inverse[k + 1]}, 1/{inverse[k + 2]}: {p:.3f}")

    cfg = preset("case1")
    u0 = build_field(cfg.ic, cfg.grid)
    taus = [8e-3, 4e-3, 2e-3, 1e-3]
    fields = [simulate(u0, replace(cfg.params, tau=t, t_final=0.5, record_every=10**6)).field for t in taus]
    for k in range(len(taus) - 2):
        p = estimate_order(*fields[k:k + 3], refine_axis="time")
        print(f"time order on tau = {taus[k]:g}, {taus[k + 1]:g}, {taus[k + 2]:g}: {p:.3f}")


if __name__ == "__main__":
    main()
