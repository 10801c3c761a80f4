import numpy as np
import pytest

from rabi_spectrum.model import ParityLabel
from rabi_spectrum.sweep import baseline_counts, detect_crossings, sweep_levels, sweep_rows

SYM, ANTI = ParityLabel.SYMMETRIC, ParityLabel.ANTISYMMETRIC


@pytest.fixture(scope="module")
def sweep():
    g_values = np.linspace(0.1, 1.2, 51)
    return g_values, sweep_levels(0.4, g_values, 6)


def test_zero_delta_levels_on_baselines():
    g_values = np.linspace(0.1, 1.2, 6)
    spectra = sweep_levels(0.0, g_values, 4)
    for xs in spectra.values():
        np.testing.assert_allclose(xs, np.tile([0, 1, 2, 3], (len(g_values), 1)), atol=1e-8)


def test_interior_baseline_counts_constant(sweep):
    g_values, spectra = sweep
    for k in (1, 2, 3):
        counts = baseline_counts(spectra, k)
        assert np.all(counts == counts[0]) and counts[0] == 2


def test_lowest_baseline_loses_the_ground_state(sweep):
    # the symmetric ground state sinks through x = 0 alone near g = 1.035
    g_values, spectra = sweep
    counts = baseline_counts(spectra, 0)
    assert np.all(counts[g_values <= 1.0] == 2)
    assert np.all(counts[g_values >= 1.05] == 1)
    assert np.all(spectra[ANTI][:, 0] < 0)


def test_crossings_are_two_sided(sweep):
    g_values, spectra = sweep
    crossings = detect_crossings(g_values, spectra)
    assert crossings, "expected Juddian crossings in this window"
    for c in crossings:
        step = int(np.argmin(np.abs(g_values - c.g_lo)))
        before = (c.k - spectra[SYM][step, c.sym_level], c.k - spectra[ANTI][step, c.anti_level])
        after = (c.k - spectra[SYM][step + 1, c.sym_level], c.k - spectra[ANTI][step + 1, c.anti_level])
        assert before[0] * before[1] < 0
        assert after[0] * after[1] < 0
        assert np.sign(before[0]) == -np.sign(after[0])


def test_first_crossings_of_each_baseline(sweep):
    g_values, spectra = sweep
    first = {}
    for c in detect_crossings(g_values, spectra):
        first.setdefault(c.k, c)
    assert first[1].g_lo == pytest.approx(0.452) and first[2].g_lo == pytest.approx(0.342)


def test_rows_are_labelled(sweep):
    g_values, spectra = sweep
    rows = sweep_rows(g_values[:2], {p: v[:2] for p, v in spectra.items()})
    assert len(rows) == 2 * 2 * 6
    for r in rows:
        assert r.gauge_a == pytest.approx(r.k - r.x)
        assert r.energy == pytest.approx(r.x - r.g ** 2)
