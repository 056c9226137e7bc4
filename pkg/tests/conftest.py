import time
from dataclasses import replace

import hypothesis
import numpy as np
import pytest

from nlkpp.config import preset
from nlkpp.core import Constant, build_field
from nlkpp.functionals import mass
from nlkpp.heat_compare import run_pair
from nlkpp.runner import simulate

np.seterr(all="warn", under="ignore")

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")


_RUNS = {}
RUN_SECONDS = {}
VERDICTS = []


def run_preset(name):
    """Simulate a preset once per session."""
    if name not in _RUNS:
        cfg = preset(name)
        start = time.perf_counter()
        _RUNS[name] = (cfg, simulate(build_field(cfg.ic, cfg.grid), cfg.params))
        RUN_SECONDS[name] = time.perf_counter() - start
    return _RUNS[name]


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def preset_run():
    return run_preset


@pytest.fixture(scope="session")
def case1_heat_pair():
    """Case 1 against the heat flow from the constant of equal mass."""
    cfg = preset("case1")
    params = replace(cfg.params, record_every=10)
    u0 = build_field(cfg.ic, cfg.grid)
    return run_pair(u0, Constant(mass(u0)), cfg.grid, params)
