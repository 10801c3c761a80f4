import csv
import io
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from conftest import REFERENCE_ANTI, REFERENCE_SYM
from rabi_spectrum import records
from rabi_spectrum.cli import EXIT_OK, EXIT_SPURIOUS, EXIT_USAGE, EXIT_VERIFY_FAILED, main

BASE = ["--g", "0.7", "--delta", "0.4"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_birkhoff_reference_levels_anti():
    code, text = run("spectrum", *BASE, "--method", "birkhoff", "--n", "9", "--k", "0", "--branch", "plus",
                     "--x-min", "-1", "--x-max", "5", "--format", "csv")
    rows = records.from_csv(text)
    kept = [r.x for r in rows if "spurious" not in r.flags]
    np.testing.assert_allclose(kept, REFERENCE_ANTI, atol=5e-4)
    assert all(r.parity == "anti" for r in rows)
    # the persistent low-energy root below the ground state is reported and flagged
    assert code == EXIT_SPURIOUS
    assert [round(r.x, 3) for r in rows if "spurious" in r.flags] == [-0.353]


def test_birkhoff_symmetric_clean_exit():
    code, text = run("spectrum", *BASE, "--method", "birkhoff", "--k", "1", "--x-min", "-0.1", "--x-max", "4.5",
                     "--format", "csv")
    assert code == EXIT_OK
    np.testing.assert_allclose([r.x for r in records.from_csv(text)], REFERENCE_SYM, atol=1e-4)


def test_diag_zero_coupling():
    code, text = run("spectrum", "--g", "0", "--delta", "0.4", "--method", "diag", "--parity", "sym",
                     "--format", "csv")
    assert code == EXIT_OK
    xs = [r.x for r in records.from_csv(text)]
    np.testing.assert_allclose(xs[:4], [0.4, 0.6, 2.4, 2.6], atol=1e-12)


def test_all_methods_agree():
    code, text = run("spectrum", *BASE, "--method", "all", "--parity", "both", "--x-min", "-0.3", "--x-max", "4.5",
                     "--format", "json")
    assert code == EXIT_OK
    rows = records.from_json(text)
    diag = {(r.parity, round(r.x, 3)): r.x for r in rows if r.method == "diag"}
    assert len(diag) == 10
    for method in ("moroz", "braak", "birkhoff"):
        found = [r for r in rows if r.method == method]
        assert len(found) == 10
        for r in found:
            assert min(abs(r.x - v) for (p, _), v in diag.items() if p == r.parity) < 1e-3
    assert rows == sorted(rows, key=lambda r: (r.x, r.parity != "sym", ["diag", "moroz", "braak", "birkhoff"].index(r.method)))


@pytest.mark.parametrize("argv", [
    ["spectrum", *BASE, "--method", "diag", "--k", "1"],
    ["spectrum", "--g", "0", "--delta", "0.4", "--method", "braak"],
    ["spectrum", *BASE, "--method", "nope"],
    ["scan", *BASE, "--function", "gplus", "--k", "2"],
    ["sweep", "--g-min", "1", "--g-max", "0.5", "--delta", "0.4"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        code = main(argv, out=io.StringIO())
        raise SystemExit(code)
    assert exc.value.code == EXIT_USAGE


def test_scan_gplus_zero_crossings():
    code, text = run("scan", "--function", "gplus", *BASE, "--x-min", "-1", "--x-max", "5")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0].keys() == {"x", "value", "pole_flag"}
    poles = [float(r["x"]) for r in rows if r["pole_flag"] == "1"]
    assert sorted({round(x) for x in poles}) == [0, 1, 2, 3, 4, 5]
    crossings = []
    prev = None
    for r in rows:
        if r["pole_flag"] == "1":
            prev = None
            continue
        cur = (float(r["x"]), float(r["value"]))
        if prev and prev[1] * cur[1] < 0:
            crossings.append(0.5 * (prev[0] + cur[0]))
        prev = cur
    assert len(crossings) == 6
    np.testing.assert_allclose(crossings[:5], REFERENCE_SYM, atol=0.01)


def test_scan_bn_symmetric_roots():
    code, text = run("scan", "--function", "bn", "--n", "8", "--k", "1", "--branch", "plus", *BASE,
                     "--x-min", "-1", "--x-max", "4.5")
    rows = [(float(r["x"]), float(r["value"])) for r in csv.DictReader(io.StringIO(text))]
    assert all(abs(v) <= 1 for _, v in rows)
    crossings = [0.5 * (a[0] + b[0]) for a, b in zip(rows, rows[1:]) if a[1] * b[1] < 0]
    np.testing.assert_allclose(crossings, REFERENCE_SYM, atol=0.01)


def test_scan_f0_below_spectrum_is_smooth():
    code, text = run("scan", "--function", "f0", *BASE, "--x-min", "-3", "--x-max", "-0.3")
    values = [float(r["value"]) for r in csv.DictReader(io.StringIO(text)) if r["pole_flag"] == "0"]
    assert all(v > 0 for v in values) or all(v < 0 for v in values)


def test_sweep_counts_and_crossings():
    code, text = run("sweep", "--g-min", "0.1", "--g-max", "1.0", "--steps", "45", "--delta", "0.4",
                     "--levels", "4", "--counts", "0")
    counts = [int(r["count"]) for r in csv.DictReader(io.StringIO(text))]
    assert code == EXIT_OK and len(counts) == 46 and set(counts) == {2}
    code, text = run("sweep", "--g-min", "0.1", "--g-max", "1.2", "--steps", "50", "--delta", "0.4",
                     "--levels", "4", "--crossings")
    ks = [int(r["k"]) for r in csv.DictReader(io.StringIO(text))]
    assert 1 in ks and 2 in ks


def test_sweep_zero_delta_rows():
    code, text = run("sweep", "--g-min", "0.1", "--g-max", "1.2", "--steps", "5", "--delta", "0", "--levels", "3")
    for r in csv.DictReader(io.StringIO(text)):
        assert float(r["x"]) == pytest.approx(int(r["k"]), abs=1e-8)
        assert float(r["gauge_a"]) == pytest.approx(0, abs=1e-8)


def test_verify_eigenvalue():
    code, text = run("verify", *BASE, "--x", "0.0629563254", "--k", "1", "--branch", "plus")
    assert code == EXIT_OK
    assert "parity sym" in text


def test_verify_off_eigenvalue():
    code, text = run("verify", *BASE, "--x", "0.46", "--k", "0", "--branch", "plus")
    assert code == EXIT_VERIFY_FAILED
    assert "oracle_distance" in text and "FAIL" in text


def test_verify_separatrix(capsys):
    code, _ = run("verify", *BASE, "--x", "0.5", "--k", "1")
    assert code == EXIT_USAGE
    assert "separatrix" in capsys.readouterr().err


def test_classify():
    code, text = run("classify", *BASE, "--x", "2.12701", "--format", "json")
    (row,) = records.from_json(text)
    assert code == EXIT_OK and row.k == 2 and row.parity == "anti" and row.solution_class == 1
    code, text = run("classify", *BASE, "--x", "2.0", "--k", "2", "--format", "json")
    assert records.from_json(text)[0].solution_class == 3


def test_csv_and_json_round_trip():
    code, text = run("spectrum", *BASE, "--x-min", "-0.3", "--x-max", "2", "--format", "csv")
    rows = records.from_csv(text)
    assert records.to_csv(rows) == text
    assert text.splitlines()[0] == "method,parity,k,x,E,gauge_a,class,oracle_residual,flags"
    assert records.from_json(records.to_json(rows)) == rows
    for r in rows:
        assert r.E == pytest.approx(r.x - 0.49, abs=1e-11)


def test_output_row_quantized():
    row = records.OutputRow("diag", "sym", 0, 0.0629563254337, -0.427043674566, -0.06295, 1, 1 / 3, ("spurious",))
    assert records.from_csv(records.to_csv([row])) == [row.quantized()]
    assert records.from_json(records.to_json([row])) == [row.quantized()]


def test_module_entry_point_and_logging():
    env = {**os.environ, "RABI_LOG": "info"}
    proc = subprocess.run([sys.executable, "-m", "rabi_spectrum", "spectrum", *BASE, "--method", "braak",
                           "--x-min", "-0.3", "--x-max", "1.5", "--format", "json"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == EXIT_OK
    assert len(json.loads(proc.stdout)) == 4
    assert "running braak" in proc.stderr
