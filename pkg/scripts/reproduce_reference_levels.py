"""Roots of the truncated b_n for the two lowest indicial choices, with oracle comparison."""
import argparse
from dataclasses import dataclass

from rabi_spectrum import birkhoff as bk
from rabi_spectrum.central_basis import oracle_spectrum
from rabi_spectrum.model import ModelParams


@dataclass(frozen=True)
class Config:
    g: float = 0.7
    delta: float = 0.4
    order: int = 9
    x_min: float = -1.0
    x_max: float = 4.5


def run(cfg: Config) -> None:
    params = ModelParams(cfg.g, cfg.delta)
    for k in (0, 1):
        choice = bk.IndicialChoice(bk.Branch.PLUS, k)
        parity = bk.parity_of(choice)
        roots = bk.birkhoff_roots(choice, params, cfg.order, cfg.x_min, cfg.x_max)
        records = bk.spurious_filter([(x, choice) for x in roots], params, cfg.order)
        oracle = oracle_spectrum(params, parity, len(roots) + 1).shifted(params)
        print(f"k={k} ({parity.short}), b_{cfg.order}")
        for rec in records:
            gap = min(abs(oracle - rec.x))
            status = "ok" if rec.accepted else "rejected"
            print(f"  x={rec.x:+.6f}  E={rec.energy(params):+.6f}  oracle gap={gap:.1e}  {status}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
