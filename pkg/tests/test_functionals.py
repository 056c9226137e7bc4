import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from nlkpp.core import CharacteristicBlock, Constant, HeatEigenmode, PolyProductCase1, ScalarField, build_field, build_grid
from nlkpp.errors import InvalidOrder
from nlkpp.functionals import (
    has_negative,
    integral_of_power,
    linf,
    lk_norm,
    mass,
    quadrature_weights,
)


def test_case1_mass():
    u = build_field(PolyProductCase1(0.5, 0.0), build_grid(2, 1, 0.01))
    assert mass(u) == pytest.approx(0.5, abs=1e-6)


def test_case1b_mass():
    u = build_field(PolyProductCase1(1.0, 1.0), build_grid(2, 1, 1 / 64))
    assert mass(u) == pytest.approx(2.25, abs=1e-12)


def test_constant_mass_exact():
    assert mass(build_field(Constant(1.0), build_grid(2, 1, 1 / 64))) == 1.0


def test_case2_block_mass_and_cube():
    h = 0.01
    u = build_field(CharacteristicBlock(0.3, 5 * h, 250.0), build_grid(2, 1, h))
    assert mass(u) == pytest.approx(0.625, rel=1e-14)
    assert integral_of_power(u, 3) == pytest.approx(3.90625e4, rel=1e-14)
    assert round(integral_of_power(u, 3), -3) == 39000.0
    assert lk_norm(u, 3) == pytest.approx(3.90625e4 ** (1 / 3), rel=1e-14)
    assert lk_norm(u, 3) == pytest.approx(33.930, abs=5e-4)


def test_case3_block_mass_and_max():
    u = build_field(CharacteristicBlock(0.3, 0.05, 10.0), build_grid(1, 1, 0.01))
    assert mass(u) == pytest.approx(0.5, rel=1e-14)
    assert linf(u) == 10.0


@pytest.mark.parametrize("b,h", [(1, 0.1), (1, 1 / 64), (2, 0.25), (3.5, 0.5)])
@pytest.mark.parametrize("dim", [1, 2])
def test_weights_sum(dim, b, h):
    g = build_grid(dim, b, h)
    assert quadrature_weights(g).sum() == pytest.approx(b**dim, rel=1e-13)


def test_weight_pattern():
    w = quadrature_weights(build_grid(2, 1, 0.5)) / 0.25
    assert w.tolist() == [[0.25, 0.5, 0.25], [0.5, 1.0, 0.5], [0.25, 0.5, 0.25]]


@pytest.mark.parametrize("dim,b", [(1, 1.0), (2, 1.0), (2, 2.0), (1, 3.0)])
def test_trapezoid_exact_on_linear(dim, b):
    g = build_grid(dim, b, b / 16)
    u = ScalarField(g, g.mesh()[0])
    assert mass(u) == pytest.approx(b**dim * b / 2, rel=1e-14)


def test_lk_norm_examples():
    g = build_grid(2, 1, 0.1)
    for k in (1, 1.5, 2, 3, 7.25):
        assert lk_norm(build_field(Constant(2.5), g), k) == pytest.approx(2.5, rel=1e-13)
    assert lk_norm(build_field(Constant(0.0), g), 2) == 0.0
    with pytest.raises(InvalidOrder):
        lk_norm(build_field(Constant(1.0), g), 0.5)


def test_linf_examples():
    g = build_grid(2, 1, 0.1)
    assert linf(build_field(Constant(-2.0), g)) == 2.0
    assert linf(build_field(Constant(0.0), g)) == 0.0


def test_fractional_power_clamps_negatives():
    g = build_grid(1, 1, 0.25)
    u = ScalarField(g, [1.0, -1e-10, 1.0, 1.0, 1.0])
    assert has_negative(u)
    w = ScalarField(g, [1.0, 0.0, 1.0, 1.0, 1.0])
    assert integral_of_power(u, 1.5) == integral_of_power(w, 1.5)
    assert lk_norm(u, 2.5) == lk_norm(w, 2.5)


GRID = build_grid(2, 1, 0.125)
field_values = arrays(float, GRID.shape, elements=st.floats(0, 10, allow_nan=False))


@given(field_values, field_values, st.floats(-5, 5), st.floats(-5, 5))
def test_mass_linearity(a_vals, b_vals, a, c):
    u, v = ScalarField(GRID, a_vals), ScalarField(GRID, b_vals)
    combo = ScalarField(GRID, a * a_vals + c * b_vals)
    expect = a * mass(u) + c * mass(v)
    assert mass(combo) == pytest.approx(expect, rel=1e-12, abs=1e-12)


@given(field_values, field_values, st.sampled_from([1, 1.5, 2, 3]))
def test_monotonicity(a_vals, extra, k):
    u, w = ScalarField(GRID, a_vals), ScalarField(GRID, a_vals + extra)
    assert mass(u) <= mass(w)
    assert lk_norm(u, k) <= lk_norm(w, k) * (1 + 1e-12)


@pytest.mark.parametrize("alpha", [1, 1.5, 2, 3])
@pytest.mark.parametrize("h", [1 / 16, 1 / 32, 1 / 64])
@pytest.mark.parametrize("ic", [PolyProductCase1(0.5, 0.0), PolyProductCase1(1.0, 1.0), HeatEigenmode(0.3, 0.7)])
def test_discrete_jensen(ic, h, alpha):
    u = build_field(ic, build_grid(2, 1, h))
    assert integral_of_power(u, alpha) >= mass(u) ** alpha - 10 * h * h
