"""Oracle spectra tracked along a coupling sweep, with baseline-crossing detection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .central_basis import oracle_spectrum
from .model import ModelParams, ParityLabel, nearest_baseline


@dataclass(frozen=True)
class SweepRow:
    g: float
    level: int
    parity: ParityLabel
    x: float
    k: int
    gauge_a: float

    @property
    def energy(self) -> float:
        return self.x - self.g * self.g


@dataclass(frozen=True)
class Crossing:
    """Opposite-parity levels passing through baseline ``k`` inside ``(g_lo, g_hi]``."""

    k: int
    g_lo: float
    g_hi: float
    sym_level: int
    anti_level: int


def sweep_levels(delta: float, g_values, levels: int) -> dict[ParityLabel, np.ndarray]:
    """Shifted energies of the lowest ``levels`` states per parity, shape ``(len(g_values), levels)``."""
    out = {}
    for parity in ParityLabel:
        rows = []
        for g in g_values:
            params = ModelParams(float(g), delta)
            rows.append(oracle_spectrum(params, parity, levels).shifted(params))
        out[parity] = np.array(rows)
    return out


def sweep_rows(g_values, spectra: dict[ParityLabel, np.ndarray]) -> list[SweepRow]:
    rows = []
    for i, g in enumerate(g_values):
        for parity in ParityLabel:
            for level, x in enumerate(spectra[parity][i]):
                label = nearest_baseline(float(x))
                rows.append(SweepRow(float(g), level, parity, float(x), label.k, label.k - float(x)))
    rows.sort(key=lambda r: (r.g, r.x, -r.parity.sign))
    return rows


def _baseline_passes(xs: np.ndarray) -> list[tuple[int, int]]:
    """(step, baseline) pairs where the trajectory ``xs`` crosses an integer between consecutive steps."""
    passes = []
    for step in range(len(xs) - 1):
        lo, hi = sorted((xs[step], xs[step + 1]))
        for k in range(max(0, int(np.ceil(lo))), int(np.floor(hi)) + 1):
            if lo < k <= hi or lo <= k < hi:
                passes.append((step, k))
    return passes


def detect_crossings(g_values, spectra: dict[ParityLabel, np.ndarray]) -> list[Crossing]:
    """Steps in which a symmetric and an anti-symmetric level cross the same baseline."""
    sym = {}
    for level in range(spectra[ParityLabel.SYMMETRIC].shape[1]):
        for step, k in _baseline_passes(spectra[ParityLabel.SYMMETRIC][:, level]):
            sym.setdefault((step, k), []).append(level)
    crossings = []
    for level in range(spectra[ParityLabel.ANTISYMMETRIC].shape[1]):
        for step, k in _baseline_passes(spectra[ParityLabel.ANTISYMMETRIC][:, level]):
            for sym_level in sym.get((step, k), []):
                crossings.append(Crossing(k, float(g_values[step]), float(g_values[step + 1]), sym_level, level))
    crossings.sort(key=lambda c: (c.g_lo, c.k))
    return crossings


def baseline_counts(spectra: dict[ParityLabel, np.ndarray], k: int) -> np.ndarray:
    """Number of levels (both parities) strictly between baselines ``k`` and ``k + 1`` at each step."""
    total = 0
    for xs in spectra.values():
        total = total + np.sum((xs > k) & (xs < k + 1), axis=1)
    return total
