import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qrelax import (
    LoopGeometry,
    disc_capacitance,
    series_effective_capacitance,
    sphere_capacitance,
    toroid_capacitance,
    toroid_on_substrate,
)
from qrelax.constants import ELEMENTARY_CHARGE, EPS0, PHI0, PLANCK
from qrelax.errors import DegenerateLogarithm, NonPositiveCapacitance, NonPositiveDimension

# frozen from 30-digit mpmath evaluations of the closed forms
SPHERE_50U = 2.78162513861967594e-15
DISC_50U = 1.77083756256e-15
TOROID_50U_5U = 1.99422181311744049e-15
SUBSTRATE_50U_5U_10 = 1.09682199721459227e-14


def test_phi0_is_h_over_2e():
    assert PHI0 == pytest.approx(PLANCK / (2 * ELEMENTARY_CHARGE), rel=5e-10)


def test_sphere_and_disc():
    assert sphere_capacitance(50e-6) == pytest.approx(SPHERE_50U, rel=1e-14)
    assert disc_capacitance(50e-6) == pytest.approx(DISC_50U, rel=1e-14)
    assert disc_capacitance(100e-6) == pytest.approx(3.54167512512e-15, rel=1e-14)
    assert disc_capacitance(100e-6) == 2 * disc_capacitance(50e-6)


@pytest.mark.parametrize("D", [1e-6, 50e-6, 3e-3])
def test_disc_over_sphere_is_two_over_pi(D):
    assert disc_capacitance(D) / sphere_capacitance(D) == pytest.approx(2 / math.pi, rel=1e-15)


@pytest.mark.parametrize("fn", [sphere_capacitance, disc_capacitance])
@pytest.mark.parametrize("D", [0.0, -1e-6, math.nan])
def test_nonpositive_dimension(fn, D):
    with pytest.raises(NonPositiveDimension):
        fn(D)


def test_toroid_values():
    g = LoopGeometry(50e-6, 5e-6, 10 * EPS0)
    assert g.log_term == pytest.approx(math.log(80), rel=1e-15)
    assert toroid_capacitance(g) == pytest.approx(TOROID_50U_5U, rel=1e-14)
    assert toroid_on_substrate(g) == pytest.approx(SUBSTRATE_50U_5U_10, rel=1e-14)


def test_substrate_vacuum_limit_and_linearity():
    g = LoopGeometry(50e-6, 5e-6)
    assert toroid_on_substrate(g) == pytest.approx(toroid_capacitance(g), rel=1e-15)
    g3 = LoopGeometry(50e-6, 5e-6, 3 * EPS0)  # eps_subs + eps0 = 4 eps0
    g7 = LoopGeometry(50e-6, 5e-6, 7 * EPS0)  # = 8 eps0
    assert toroid_on_substrate(g7) == pytest.approx(2 * toroid_on_substrate(g3), rel=1e-15)


def test_degenerate_log():
    with pytest.raises(DegenerateLogarithm):
        LoopGeometry(1e-6, 8e-6)


def test_thin_ring_warning():
    with pytest.warns(UserWarning, match="D >> a"):
        LoopGeometry(10e-6, 2e-6)


@pytest.mark.parametrize("ln_term", [5.0, 6.0, 7.5, 10.0])
def test_toroid_within_factor_three_of_sphere(ln_term):
    D = 100e-6
    g = LoopGeometry(D, 8 * D / math.exp(ln_term))
    ratio = sphere_capacitance(D) / toroid_capacitance(g)
    assert ratio == pytest.approx(ln_term / math.pi, rel=1e-14)
    assert 1 < ratio <= 10 / math.pi


def test_series_effective_capacitance():
    assert series_effective_capacitance(10e-15, 10e-15) == pytest.approx(5e-15, rel=1e-15)
    assert series_effective_capacitance(10e-15, 1.0) == pytest.approx(10e-15, rel=1e-13)
    assert series_effective_capacitance(10e-15, 1e-15) == pytest.approx(0.909090909090909e-15, rel=1e-14)
    with pytest.raises(NonPositiveCapacitance):
        series_effective_capacitance(0.0, 1e-15)


dims = st.floats(1e-6, 1e-3)


@pytest.mark.filterwarnings("ignore:D/a")
@given(D=dims, ratio=st.floats(10, 1e4), eps_r=st.floats(1, 20), k=st.floats(1.01, 3))
def test_monotonicity(D, ratio, eps_r, k):
    # thin-ring domain D >> a; below ln(8D/a) = 1 the formula itself turns over
    a = D / ratio
    g = LoopGeometry(D, a, eps_r * EPS0)
    bigger_D = LoopGeometry(D * k, a, eps_r * EPS0)
    wider = LoopGeometry(D, a * k, eps_r * EPS0)
    assert sphere_capacitance(D * k) > sphere_capacitance(D)
    assert disc_capacitance(D * k) > disc_capacitance(D)
    assert toroid_capacitance(bigger_D) > toroid_capacitance(g)
    assert toroid_on_substrate(bigger_D) > toroid_on_substrate(g)
    # a wider trace shrinks ln(8D/a), so the ring capacitance grows with a
    assert toroid_capacitance(wider) > toroid_capacitance(g)
    assert toroid_on_substrate(wider) > toroid_on_substrate(g)
    assert toroid_on_substrate(g) >= toroid_capacitance(g)


@given(st.floats(1e-17, 1e-9), st.floats(1e-17, 1e-9))
def test_series_symmetric_and_bounded(x, y):
    assert series_effective_capacitance(x, y) == series_effective_capacitance(y, x)
    assert series_effective_capacitance(x, y) <= min(x, y)
