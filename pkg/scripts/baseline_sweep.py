"""Sweep the coupling at fixed splitting and list baseline crossings and per-interval counts."""
import argparse
from dataclasses import dataclass

import numpy as np

from rabi_spectrum.sweep import baseline_counts, detect_crossings, sweep_levels


@dataclass(frozen=True)
class Config:
    delta: float = 0.4
    g_min: float = 0.1
    g_max: float = 1.2
    steps: int = 50
    levels: int = 6


def run(cfg: Config) -> None:
    g_values = np.linspace(cfg.g_min, cfg.g_max, cfg.steps + 1)
    spectra = sweep_levels(cfg.delta, g_values, cfg.levels)
    for c in detect_crossings(g_values, spectra):
        print(f"crossing on baseline k={c.k} for g in [{c.g_lo:.4f}, {c.g_hi:.4f}]")
    for k in range(4):
        counts = baseline_counts(spectra, k)
        changes = g_values[1:][np.diff(counts) != 0]
        print(f"levels in ({k},{k + 1}): {sorted(set(counts.tolist()))}, changes at g = {np.round(changes, 3).tolist()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
