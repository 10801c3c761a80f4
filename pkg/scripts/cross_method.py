"""Compare the four solvers level by level and report convergence in the truncation order."""
import argparse
from dataclasses import dataclass

import numpy as np

from rabi_spectrum import birkhoff as bk
from rabi_spectrum import displaced
from rabi_spectrum.central_basis import oracle_spectrum
from rabi_spectrum.model import ModelParams, ParityLabel
from rabi_spectrum.rootfind import ScanConfig, find_roots


@dataclass(frozen=True)
class Config:
    g: float = 0.7
    delta: float = 0.4
    levels: int = 5
    braak_terms: int = 60
    moroz_terms: int = 40
    orders: tuple = (8, 10, 12, 14, 16)


def _deviation(found, reference):
    if not found:
        return float("inf")
    return float(max(np.min(np.abs(np.asarray(found) - x)) for x in reference))


def run(cfg: Config) -> None:
    params = ModelParams(cfg.g, cfg.delta)
    for parity in ParityLabel:
        ref = oracle_spectrum(params, parity, cfg.levels).shifted(params)
        scan = ScanConfig(-abs(cfg.delta) - 1.0, ref[-1] + 0.05)
        braak = find_roots(lambda x: displaced.braak_g(x, parity, params, cfg.braak_terms), scan)
        moroz = find_roots(lambda x: displaced.moroz_f0(x, params, cfg.moroz_terms), scan)
        choice = bk.choice_for(parity, 1 if parity is ParityLabel.SYMMETRIC else 0, params)
        print(f"{parity.short}: oracle x = {np.array2string(ref, precision=6)}")
        print(f"  braak  n={cfg.braak_terms:<3d} max dev {_deviation(braak, ref):.1e}")
        print(f"  moroz  n={cfg.moroz_terms:<3d} max dev {_deviation(moroz, ref):.1e} (both parities)")
        for n in cfg.orders:
            roots = bk.birkhoff_roots(choice, params, n, ref[0] - 0.05, ref[-1] + 0.05)
            print(f"  b_n    n={n:<3d} max dev {_deviation(roots, ref):.1e}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=float, default=Config.g)
    ap.add_argument("--delta", type=float, default=Config.delta)
    ap.add_argument("--levels", type=int, default=Config.levels)
    args = ap.parse_args()
    run(Config(args.g, args.delta, args.levels))


if __name__ == "__main__":
    main()
