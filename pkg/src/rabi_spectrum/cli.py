"""Command line interface: ``rabi-spectrum {spectrum,scan,sweep,classify,verify}``.

Exit codes: 0 success, 1 verification failure, 2 spurious roots reported,
64 usage or domain error. Set ``RABI_LOG`` to ``error``, ``info`` or
``debug`` for diagnostics on stderr.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys

import numpy as np

from . import birkhoff as bk
from . import central_basis, displaced, records
from .errors import PoleAtBaseline, PoleParameter, RabiError
from .model import FLAG_SPURIOUS, FLAG_UNVERIFIED, Method, ModelParams, ParityLabel
from .rootfind import ScanConfig, find_roots
from .sweep import baseline_counts, detect_crossings, sweep_levels, sweep_rows

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SPURIOUS = 2
EXIT_USAGE = 64

log = logging.getLogger("rabi_spectrum")

_METHOD_ORDER = {m.value: i for i, m in enumerate(Method)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _configure_logging():
    level = os.environ.get("RABI_LOG", "error").upper()
    logging.basicConfig(stream=sys.stderr, level=getattr(logging, level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")


def _parities(text: str) -> list[ParityLabel]:
    if text == "both":
        return [ParityLabel.SYMMETRIC, ParityLabel.ANTISYMMETRIC]
    return [ParityLabel.parse(text)]


def _params(args, recurrence: bool) -> ModelParams:
    try:
        params = ModelParams(args.g, args.delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if recurrence and params.g <= 0:
        raise UsageError("recurrence-based methods require g > 0")
    return params


def _emit(rows, fmt: str, out):
    if fmt == "csv":
        out.write(records.to_csv(rows))
    elif fmt == "json":
        out.write(records.to_json(rows) + "\n")
    else:
        out.write(records.to_table(rows))


def _oracle_residual(x: float, oracle: dict) -> tuple[ParityLabel, float]:
    best = min(((p, float(np.min(np.abs(xs - x)))) for p, xs in oracle.items()), key=lambda t: t[1])
    return best


def _spectrum_records(args, params: ModelParams) -> list:
    x_min = -abs(params.delta) - 0.5 if args.x_min is None else args.x_min
    x_max = args.x_max
    parities = _parities(args.parity)
    methods = list(Method) if args.method == "all" else [Method(args.method)]
    oracle = {p: central_basis.oracle_levels(params, p, x_max + 1) for p in ParityLabel}
    cfg = ScanConfig(x_min, x_max, grid_step=args.step)
    levels = []

    def checked(x, parity, method, branch=bk.Branch.PLUS):
        residual = float(np.min(np.abs(oracle[parity] - x)))
        flags = () if residual <= args.cross_tol else (FLAG_SPURIOUS,)
        return bk.label_level(x, parity, params, method, branch, residual, flags)

    for method in methods:
        log.info("running %s", method.value)
        if method is Method.DIAG:
            for parity in parities:
                if args.n is not None and args.method == "diag":
                    count = min(args.n, max(1, int(math.ceil(x_max + abs(params.delta))) + 4))
                    xs = central_basis.eigenvalues_sturm(
                        central_basis.build_block(parity, params, args.n), count).shifted(params)
                else:
                    xs = oracle[parity]
                for x in xs[(xs >= x_min) & (xs <= x_max)]:
                    levels.append(bk.label_level(float(x), parity, params, method, oracle_residual=0.0))
        elif method is Method.BRAAK:
            n = args.n if args.n is not None and args.method == "braak" else displaced.DEFAULT_BRAAK_TERMS
            for parity in parities:
                for x in find_roots(lambda x, p=parity: displaced.braak_g(x, p, params, n), cfg):
                    levels.append(checked(x, parity, method))
        elif method is Method.MOROZ:
            n = args.n if args.n is not None and args.method == "moroz" else displaced.DEFAULT_MOROZ_TERMS
            for x in find_roots(lambda x: displaced.moroz_f0(x, params, n), cfg):
                parity, residual = _oracle_residual(x, oracle)
                if parity not in parities:
                    continue
                # F0 does not resolve parity: unmatched or doubly matched roots stay unverified
                other = float(np.min(np.abs(oracle[parity.flipped()] - x)))
                ambiguous = residual > args.cross_tol or other <= args.cross_tol
                flags = (FLAG_UNVERIFIED,) if ambiguous else ()
                levels.append(bk.label_level(x, parity, params, method, oracle_residual=residual, flags=flags))
        else:
            levels.extend(_birkhoff_records(args, params, parities, x_min, x_max))
    levels.sort(key=lambda r: (r.x, -r.parity.sign, _METHOD_ORDER[r.method.value]))
    return levels


def _birkhoff_records(args, params, parities, x_min, x_max):
    branch = bk.Branch(args.branch)
    if args.k is not None:
        choices = [bk.IndicialChoice(branch, args.k)]
    else:
        choices = []
        for parity in parities:
            choices.append(next(c for c in (bk.IndicialChoice(branch, 0), bk.IndicialChoice(branch, 1))
                                if bk.implied_parity(c, params) is parity))
    out = []
    for choice in choices:
        if args.n is not None:
            n, roots = args.n, bk.birkhoff_roots(choice, params, args.n, x_min, x_max, grid_step=args.step)
        else:
            found = bk.birkhoff_spectrum(choice, params, x_min, x_max)
            n, roots = found.order, found.roots
            log.info("birkhoff %s k=%d order %d drift %.3g", choice.branch.value, choice.k, n, found.drift)
        out.extend(bk.spurious_filter([(x, choice) for x in roots], params, n, cross_tol=args.cross_tol))
    return out


def cmd_spectrum(args, out) -> int:
    recurrence = args.method != "diag"
    if args.method not in ("birkhoff", "all") and (args.k is not None or args.branch_given):
        raise UsageError("--k/--branch only apply to the birkhoff method")
    params = _params(args, recurrence)
    rows = [records.OutputRow.from_level(r, params) for r in _spectrum_records(args, params)]
    _emit(rows, args.format, out)
    return EXIT_SPURIOUS if any(FLAG_SPURIOUS in r.flags for r in rows) else EXIT_OK


def cmd_scan(args, out) -> int:
    if args.function != "bn" and (args.k is not None or args.branch_given):
        raise UsageError("--k/--branch only apply to --function bn")
    params = _params(args, True)
    if args.function == "bn":
        choice = bk.IndicialChoice(bk.Branch(args.branch), args.k or 0)
        n = args.n or 8
        fn = lambda x: bk.leapfrog_bn(x, choice, params, n)  # noqa: E731
        exclusion = 0.0
    else:
        exclusion = args.pole_exclusion
        if args.function == "f0":
            n = args.n or displaced.DEFAULT_MOROZ_TERMS
            fn = lambda x: displaced.moroz_f0(x, params, n)  # noqa: E731
        else:
            parity = ParityLabel.SYMMETRIC if args.function == "gplus" else ParityLabel.ANTISYMMETRIC
            n = args.n or displaced.DEFAULT_BRAAK_TERMS
            fn = lambda x: displaced.braak_g(x, parity, params, n)  # noqa: E731
    cfg = ScanConfig(args.x_min, args.x_max, grid_step=args.step, pole_exclusion=exclusion)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "value", "pole_flag"])
    for x in cfg.grid():
        x = float(x)
        value = None
        if not cfg.in_exclusion(x):
            try:
                value = fn(x)
            except PoleAtBaseline:
                value = None
        if value is None:
            writer.writerow([records.fmt(x), "", 1])
        else:
            writer.writerow([records.fmt(x), records.fmt(value), 0])
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    if args.steps < 1 or args.levels < 1:
        raise UsageError("--steps and --levels must be positive")
    if args.g_min < 0 or args.g_max <= args.g_min:
        raise UsageError("need 0 <= g-min < g-max")
    g_values = np.linspace(args.g_min, args.g_max, args.steps + 1)
    spectra = sweep_levels(args.delta, g_values, args.levels)
    writer = csv.writer(out, lineterminator="\n")
    if args.crossings:
        writer.writerow(["k", "g_lo", "g_hi", "sym_level", "anti_level"])
        for c in detect_crossings(g_values, spectra):
            writer.writerow([c.k, records.fmt(c.g_lo), records.fmt(c.g_hi), c.sym_level, c.anti_level])
    elif args.counts is not None:
        writer.writerow(["g", "k", "count"])
        for g, count in zip(g_values, baseline_counts(spectra, args.counts)):
            writer.writerow([records.fmt(g), args.counts, int(count)])
    else:
        writer.writerow(["g", "level", "parity", "x", "E", "k", "gauge_a"])
        for r in sweep_rows(g_values, spectra):
            writer.writerow([records.fmt(r.g), r.level, r.parity.short, records.fmt(r.x), records.fmt(r.energy),
                             r.k, records.fmt(r.gauge_a)])
    return EXIT_OK


def cmd_classify(args, out) -> int:
    params = _params(args, False)
    if args.k is not None:
        choice = bk.IndicialChoice(bk.Branch(args.branch), args.k)
        parity = bk.implied_parity(choice, params)
        branch = choice.branch
    else:
        choice = None
        branch = bk.Branch(args.branch)
    oracle = {p: central_basis.oracle_levels(params, p, args.x + 1) for p in ParityLabel}
    if args.parity is not None:
        parity = ParityLabel.parse(args.parity)
    elif choice is None:
        parity, _ = _oracle_residual(args.x, oracle)
    residual = float(np.min(np.abs(oracle[parity] - args.x)))
    flags = () if residual <= args.cross_tol else (FLAG_UNVERIFIED,)
    rec = bk.label_level(args.x, parity, params, Method.DIAG, branch, residual, flags)
    if choice is not None:
        # report the class under the requested indicial root rather than the nearest baseline
        rec = type(rec)(**{**rec.__dict__, "solution_class": bk.classify_solution(args.x, choice, params)})
    _emit([records.OutputRow.from_level(rec, params)], args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    params = _params(args, True)
    choice = bk.IndicialChoice(bk.Branch(args.branch), args.k)
    z_samples = [float(v) for v in args.z_samples.split(",") if v.strip()]
    try:
        residual = bk.eigenfunction_parity_check(args.x, choice, params, z_samples)
    except PoleParameter as exc:
        print(f"separatrix/Juddian condition (class 2 or 3): {exc}", file=sys.stderr)
        return EXIT_USAGE
    parity = bk.implied_parity(choice, params)
    oracle = central_basis.oracle_levels(params, parity, args.x + 1)
    distance = float(np.min(np.abs(oracle - args.x)))
    parity_ok = residual < args.tol
    energy_ok = distance <= args.cross_tol
    out.write(f"parity {parity.short}\n")
    out.write(f"gauge_a {records.fmt(bk.gauge_factor(args.x, choice))}\n")
    out.write(f"class {int(bk.classify_solution(args.x, choice, params))}\n")
    out.write(f"parity_residual {records.fmt(residual)} {'ok' if parity_ok else 'FAIL'}\n")
    out.write(f"oracle_distance {records.fmt(distance)} {'ok' if energy_ok else 'FAIL'}\n")
    return EXIT_OK if parity_ok and energy_ok else EXIT_VERIFY_FAILED


class _BranchAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)
        namespace.branch_given = True


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rabi-spectrum", description="Quantum Rabi model spectra by four methods.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_args(p, g_required=True):
        p.add_argument("--g", type=float, required=g_required, help="coupling g")
        p.add_argument("--delta", type=float, required=True, help="half level splitting")

    def choice_args(p):
        p.add_argument("--k", type=int, default=None, help="indicial quantum number k")
        p.add_argument("--branch", choices=("plus", "minus"), default="plus", action=_BranchAction)
        p.set_defaults(branch_given=False)

    p = sub.add_parser("spectrum", help="eigenvalues in an energy window")
    model_args(p)
    p.add_argument("--method", choices=("diag", "moroz", "braak", "birkhoff", "all"), default="all")
    p.add_argument("--parity", choices=("sym", "anti", "both"), default="both")
    p.add_argument("--x-min", type=float, default=None, help="lower end of x = E + g^2 (default -|delta| - 0.5)")
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--n", type=int, default=None, help="truncation order of the chosen method")
    p.add_argument("--step", type=float, default=0.01, help="root scan grid step")
    p.add_argument("--cross-tol", type=float, default=bk.CROSS_TOL)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    choice_args(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("scan", help="tabulate a transcendental function on a grid")
    model_args(p)
    p.add_argument("--function", choices=("f0", "gplus", "gminus", "bn"), required=True)
    p.add_argument("--x-min", type=float, default=-1.0)
    p.add_argument("--x-max", type=float, default=5.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--pole-exclusion", type=float, default=1e-3)
    choice_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep", help="oracle levels along a coupling sweep")
    p.add_argument("--g-min", type=float, required=True)
    p.add_argument("--g-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--levels", type=int, default=4, help="levels per parity")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--crossings", action="store_true", help="report opposite-parity baseline crossings")
    mode.add_argument("--counts", type=int, default=None, metavar="K", help="count levels in (K, K+1) per step")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("classify", help="label a given energy")
    model_args(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--parity", choices=("sym", "anti"), default=None)
    p.add_argument("--cross-tol", type=float, default=bk.CROSS_TOL)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    choice_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="eigenfunction parity check at an energy")
    model_args(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--z-samples", default="-1,-0.5,-0.25,0.25,0.5,1")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--cross-tol", type=float, default=bk.CROSS_TOL)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    _configure_logging()
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"rabi-spectrum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RabiError as exc:
        print(f"rabi-spectrum: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
