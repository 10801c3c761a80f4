"""Regenerate the frozen oracle spectrum used by tests/test_central_basis.py."""
import json
import pathlib

from rabi_spectrum.central_basis import oracle_spectrum
from rabi_spectrum.model import ModelParams, ParityLabel

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "golden" / "oracle_g0.3_delta0.4.json"


def main():
    params = ModelParams(0.3, 0.4)
    data = {"g": params.g, "delta": params.delta, "n_trunc": 400}
    for parity in ParityLabel:
        spec = oracle_spectrum(params, parity, 6, n_trunc=400)
        data[parity.short] = {"truncation": spec.truncation, "E": [float(v) for v in spec.eigenvalues]}
    OUT.write_text(json.dumps(data, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
