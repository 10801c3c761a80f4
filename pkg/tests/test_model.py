import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabi_spectrum.model import ModelParams, ParityLabel, baseline_energy, nearest_baseline


@pytest.mark.parametrize("k, g, expected", [(0, 0.7, -0.49), (3, 0.0, 3.0), (1, 0.7, 0.51)])
def test_baseline_energy(k, g, expected):
    assert baseline_energy(k, ModelParams(g, 0.4)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("x, k, dist", [(0.062956, 0, 0.062956), (2.12701, 2, 0.12701)])
def test_nearest_baseline_table_values(x, k, dist):
    label = nearest_baseline(x)
    assert label.k == k
    assert label.distance == pytest.approx(dist, abs=1e-12)
    assert not label.separatrix


def test_separatrix_flag():
    assert nearest_baseline(0.5).separatrix
    assert nearest_baseline(2.5).separatrix


def test_below_lowest_separatrix_warns():
    with pytest.warns(RuntimeWarning):
        label = nearest_baseline(-0.8)
    assert label.k == 0 and abs(label.distance) > 0.5


@given(st.integers(0, 10_000), st.floats(0, 50, allow_nan=False))
def test_baseline_plus_g2_is_k(k, g):
    params = ModelParams(g, 0.3)
    assert baseline_energy(k, params) + params.g ** 2 == pytest.approx(k, rel=1e-15, abs=1e-12)


@given(st.floats(-0.5, 1e6, allow_nan=False))
def test_nearest_distance_at_most_half(x):
    label = nearest_baseline(x)
    assert label.k >= 0
    assert abs(label.distance) <= 0.5


@given(st.floats(-100, 100, allow_nan=False), st.floats(0, 5, allow_nan=False))
def test_energy_round_trip(x, g):
    params = ModelParams(g, 0.4)
    assert params.to_shifted(params.to_energy(x)) == pytest.approx(x, abs=1e-12)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(-0.1, 0.4)
    with pytest.raises(ValueError):
        ModelParams(0.1, math.inf)
    with pytest.raises(ValueError):
        ModelParams(0.0, 0.4).require_coupling()
    assert ModelParams(0.5, -0.4).parity_swapped


def test_parity_label():
    assert ParityLabel.SYMMETRIC.sign == 1
    assert ParityLabel.ANTISYMMETRIC.flipped() is ParityLabel.SYMMETRIC
    assert ParityLabel.parse("anti") is ParityLabel.ANTISYMMETRIC
