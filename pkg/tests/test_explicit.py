import numpy as np
import pytest

from nlkpp.core import HEAT, Constant, HeatEigenmode, PolyProductCase1, SimParams, build_field, build_grid
from nlkpp.errors import CflViolation, ValidationError
from nlkpp.explicit import ExplicitParams, explicit_run, explicit_step
from nlkpp.runner import simulate


def test_unit_mass_constant_stays():
    g = build_grid(2, 1, 1 / 16)
    u = build_field(Constant(1.0), g)
    out = explicit_run(u, SimParams(alpha=2, tau=1e-3, t_final=1), ExplicitParams(1e-4), 1e-2)
    assert np.max(np.abs(out.values - 1.0)) <= 1e-13


def test_zero_field_stays_zero():
    g = build_grid(2, 1, 1 / 16)
    u = build_field(Constant(0.0), g)
    out = explicit_step(u, SimParams(alpha=1.5, tau=1e-3, t_final=1), ExplicitParams(1e-4))
    assert np.all(out.values == 0)


def test_heat_eigenmode_1d():
    g = build_grid(1, 1, 1 / 64)
    u = build_field(HeatEigenmode(0.1, 1.0), g)
    out = explicit_run(u, SimParams(alpha=1, tau=1e-3, t_final=1, mode=HEAT), ExplicitParams(1e-6), 0.01)
    exact = 1 + 0.1 * np.exp(-np.pi**2 * 0.01) * np.cos(np.pi * g.nodes)
    assert np.max(np.abs(out.values - exact)) <= 1e-5


def test_cfl_guard():
    g = build_grid(2, 1, 1 / 16)
    u = build_field(Constant(1.0), g)
    p = SimParams(alpha=1, tau=1e-3, t_final=1)
    with pytest.raises(CflViolation):
        explicit_step(u, p, ExplicitParams(1e-3))
    explicit_step(u, p, ExplicitParams(1e-3, cfl_guard=False))
    with pytest.raises(ValidationError):
        ExplicitParams(0.0)


def test_truncated_last_step():
    g = build_grid(1, 1, 1 / 16)
    u = build_field(HeatEigenmode(0.1, 1.0), g)
    p = SimParams(alpha=1, tau=1e-3, t_final=1, mode=HEAT)
    run = explicit_run(u, p, ExplicitParams(1e-4), 2.5e-4)
    by_hand = explicit_step(explicit_step(u, p, ExplicitParams(1e-4)), p, ExplicitParams(1e-4))
    by_hand = explicit_step(by_hand, p, ExplicitParams(5e-5))
    assert np.max(np.abs(run.values - by_hand.values)) <= 1e-15


@pytest.mark.slow
def test_adi_agrees_on_17x17():
    g = build_grid(2, 1, 1 / 16)
    u0 = build_field(PolyProductCase1(0.5, 0.0), g)
    p = SimParams(alpha=1.5, tau=1e-3, t_final=1.0)
    adi = simulate(u0, p).field.values
    ref = explicit_run(u0, p, ExplicitParams(1e-5), 1.0).values
    assert np.max(np.abs(adi - ref)) / np.max(np.abs(ref)) <= 1e-2
