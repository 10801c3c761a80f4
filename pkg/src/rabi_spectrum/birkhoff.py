"""Canonical-form (Birkhoff) quantization of the Rabi Hamiltonian.

The Laurent coefficients ``a_n, b_n`` of the transform matrix are generated
by leapfrogging ``b_1 -> a_1 -> b_2 -> a_2 -> ...`` from ``a_0 = 1``,
``b_0 = 0`` and the gauge-fixing value of ``b_1``. Integer quantization of
an indicial root, ``x + A = k`` or ``x - A = k``, fixes the gauge factor
``A = delta + 2 g b_1``; the eigenvalue condition is ``b_n(x) -> 0``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import central_basis
from .kummer import kummer_1f1
from .errors import PoleParameter
from .model import (FLAG_SEPARATRIX, FLAG_SPURIOUS, LevelRecord, Method, ModelParams, ParityLabel,
                    SolutionClass, nearest_baseline)
from .rootfind import ScanConfig, find_roots

RESCALE_THRESHOLD = 1e100
DEFAULT_ORDER = 12
ESCALATED_ORDER = 16
DRIFT_TOL = 1e-6
CLASS_TOL = 1e-6
CROSS_TOL = 1e-3
PERSIST_TOL = 1e-3


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


@dataclass(frozen=True)
class IndicialChoice:
    branch: Branch
    k: int

    def __post_init__(self):
        if self.k < 0 or int(self.k) != self.k:
            raise ValueError(f"k must be a non-negative integer, got {self.k}")


def gauge_factor(x: float, choice: IndicialChoice) -> float:
    """Gauge factor making the chosen indicial root equal ``k``: ``+(k - x)`` or ``-(k - x)``."""
    return choice.branch.sign * (choice.k - x)


def parity_of(choice: IndicialChoice) -> ParityLabel:
    """Reflection parity generated by a quantized indicial root."""
    odd = choice.k % 2 == 1
    parity = ParityLabel.SYMMETRIC if odd else ParityLabel.ANTISYMMETRIC
    return parity if choice.branch is Branch.PLUS else parity.flipped()


def implied_parity(choice: IndicialChoice, params: ModelParams) -> ParityLabel:
    """Parity of the roots for a given choice; the sign of ``delta`` moves the roots, not the label."""
    return parity_of(choice)


def choice_for(parity: ParityLabel, k: int, params: ModelParams) -> IndicialChoice:
    """The branch at baseline ``k`` whose roots carry ``parity``."""
    plus = IndicialChoice(Branch.PLUS, k)
    if implied_parity(plus, params) is parity:
        return plus
    return IndicialChoice(Branch.MINUS, k)


@dataclass
class LeapfrogState:
    a: list
    b: list
    gauge: float
    x: float
    choice: IndicialChoice
    params: ModelParams
    log_scale: float = 0.0

    @property
    def b1(self) -> float:
        """Unscaled ``b_1``; the recurrence coefficients always use this value."""
        return (self.gauge - self.params.delta) / (2 * self.params.g)

    def _rescale(self):
        peak = max(max(abs(v) for v in self.a), max(abs(v) for v in self.b))
        if peak > RESCALE_THRESHOLD:
            self.a = [v / peak for v in self.a]
            self.b = [v / peak for v in self.b]
            self.log_scale += math.log(peak)

    def peak(self) -> float:
        return max(max(abs(v) for v in self.a), max(abs(v) for v in self.b))


def init_leapfrog(x: float, choice: IndicialChoice, params: ModelParams) -> LeapfrogState:
    params.require_coupling()
    gauge = gauge_factor(x, choice)
    b1 = (gauge - params.delta) / (2 * params.g)
    return LeapfrogState(a=[1.0], b=[0.0, b1], gauge=gauge, x=x, choice=choice, params=params)


def step_a(state: LeapfrogState, n: int) -> float:
    """Four-term recursion for ``a_n`` from ``a_{n-1}``, ``b_n`` and ``b_{n-1}``."""
    if len(state.a) != n or len(state.b) <= n:
        raise ValueError(f"step_a({n}) needs a up to {n - 1} and b up to {n}")
    g, delta, x, gauge = state.params.g, state.params.delta, state.x, state.gauge
    two_g_b1 = gauge - delta
    parity_term = delta * (1 + (-1) ** (n + 1))
    value = ((x - n + 1) * g * state.a[n - 1]
             - (two_g_b1 + parity_term) * state.b[n]
             - g * gauge * state.b[n - 1]) / n
    state.a.append(value)
    state._rescale()
    return state.a[n]


def step_b(state: LeapfrogState, n: int) -> float:
    """Five-term recursion for ``b_n`` (``n >= 2``) from ``a_{n-1}, a_{n-2}, b_{n-1}, b_{n-2}``."""
    if n < 2 or len(state.b) != n or len(state.a) < n:
        raise ValueError(f"step_b({n}) needs n >= 2, b up to {n - 1} and a up to {n - 1}")
    g, delta, x, gauge = state.params.g, state.params.delta, state.x, state.gauge
    two_g_b1 = gauge - delta
    parity_term = delta * (1 + (-1) ** n)
    value = (g * gauge * state.a[n - 2]
             + (two_g_b1 + parity_term) * state.a[n - 1]
             + g * (n - 2 - x) * state.b[n - 2]
             + (n - 1 - 2 * g * g) * state.b[n - 1]) / (2 * g)
    state.b.append(value)
    state._rescale()
    return state.b[n]


def leapfrog(x: float, choice: IndicialChoice, params: ModelParams, n: int, with_last_a: bool = True) -> LeapfrogState:
    """Run the leapfrog up to ``b_n`` (and ``a_n`` unless ``with_last_a`` is false)."""
    if n < 1:
        raise ValueError("n must be positive")
    state = init_leapfrog(x, choice, params)
    step_a(state, 1)
    for m in range(2, n + 1):
        step_b(state, m)
        step_a(state, m)
    if not with_last_a:
        state.a.pop()
    return state


def leapfrog_bn(x: float, choice: IndicialChoice, params: ModelParams, n: int) -> float:
    """``b_n(x)`` divided by the largest coefficient magnitude generated on the way.

    The scale factor is positive, so zero crossings in ``x`` are those of the
    raw coefficient.
    """
    state = leapfrog(x, choice, params, n, with_last_a=False)
    return state.b[n] / state.peak()


def leapfrog_an(x: float, choice: IndicialChoice, params: ModelParams, n: int) -> float:
    state = leapfrog(x, choice, params, n)
    return state.a[n] / state.peak()


def birkhoff_roots(choice: IndicialChoice, params: ModelParams, n: int, x_min: float, x_max: float,
                   grid_step: float = 0.01, root_tol: float = 1e-10, terminate: str = "b") -> list[float]:
    """Zeros of the truncated ``b_n`` (or ``a_n``) on ``[x_min, x_max]``; these functions have no poles."""
    fn = leapfrog_bn if terminate == "b" else leapfrog_an
    cfg = ScanConfig(x_min, x_max, grid_step=grid_step, pole_exclusion=0.0, root_tol=root_tol)
    return find_roots(lambda x: fn(x, choice, params, n), cfg)


def _max_drift(coarse: Sequence[float], fine: Sequence[float]) -> float:
    if len(coarse) != len(fine):
        return math.inf
    return max((abs(p - q) for p, q in zip(coarse, fine)), default=0.0)


@dataclass(frozen=True)
class BirkhoffRoots:
    choice: IndicialChoice
    order: int
    roots: list
    drift: float


def birkhoff_spectrum(choice: IndicialChoice, params: ModelParams, x_min: float, x_max: float,
                      n: int = DEFAULT_ORDER, escalate_to: int = ESCALATED_ORDER,
                      drift_tol: float = DRIFT_TOL) -> BirkhoffRoots:
    """Roots of ``b_n`` with escalation to a higher order when ``b_n`` and ``b_{n+1}`` roots drift apart."""
    roots = birkhoff_roots(choice, params, n, x_min, x_max)
    drift = _max_drift(roots, birkhoff_roots(choice, params, n + 1, x_min, x_max))
    if drift > drift_tol and escalate_to > n:
        n = escalate_to
        roots = birkhoff_roots(choice, params, n, x_min, x_max)
        drift = _max_drift(roots, birkhoff_roots(choice, params, n + 1, x_min, x_max))
    return BirkhoffRoots(choice, n, roots, drift)


def stable_order(x_root: float, choice: IndicialChoice, params: ModelParams, tol: float = 1e-6,
                 n_max: int = 40, window: float = 0.05) -> int | None:
    """Smallest order ``n`` from which ``b_n``, ``b_{n+1}``, ``b_{n+2}`` all have a root within ``tol`` of ``x_root``."""
    def has_root(m):
        roots = birkhoff_roots(choice, params, m, x_root - window, x_root + window, grid_step=window / 20)
        return any(abs(r - x_root) <= tol for r in roots)

    hits = [has_root(m) for m in range(1, n_max + 3)]
    for n in range(1, n_max + 1):
        if all(hits[n - 1:n + 2]):
            return n
    return None


def classify_solution(x: float, choice: IndicialChoice, params: ModelParams, tol: float = CLASS_TOL) -> SolutionClass:
    gauge = gauge_factor(x, choice)
    if abs(x - round(x)) < tol:
        if abs(gauge) < tol:
            return SolutionClass.JUDDIAN
        if abs(gauge - round(gauge)) < tol:
            return SolutionClass.INTEGER_GAUGE
        return SolutionClass.GENERIC
    if abs(x - math.floor(x) - 0.5) < tol:
        return SolutionClass.HALF_INTEGER
    return SolutionClass.GENERIC


def eigenfunction(x: float, choice: IndicialChoice, params: ModelParams, z: float) -> tuple[float, float]:
    """Canonical-system solution ``(F1(z), F2(z))`` for a quantized indicial root, on the real axis.

    ``F1 = exp(gz) 1F1(1+alpha, 1+2alpha; -2gz) z**k`` with ``alpha = k - x``
    for both branches; ``F2`` follows from the first canonical equation and
    changes sign with the branch.
    """
    params.require_coupling()
    g, k = params.g, choice.k
    alpha = choice.k - x
    if abs(alpha) < 1e-12:
        raise PoleParameter(f"gauge factor vanishes at x={x}: Juddian point, solution space is two-dimensional")
    if abs(2 * alpha - round(2 * alpha)) < 1e-12 and round(2 * alpha) % 2 != 0:
        # one of 1 +- 2A is a non-positive integer: separatrix between baselines
        raise PoleParameter(f"half-integer gauge factor {alpha} at x={x}: separatrix, Kummer parameter degenerates")
    w = -2 * g * z
    envelope = math.exp(g * z) * z ** k
    f1 = envelope * kummer_1f1(1 + alpha, 1 + 2 * alpha, w)
    f2 = (1 - 2 * g * z) * f1 / alpha - (1 + alpha) / alpha * envelope * kummer_1f1(2 + alpha, 1 + 2 * alpha, w)
    return f1, choice.branch.sign * f2


def eigenfunction_parity_check(x: float, choice: IndicialChoice, params: ModelParams,
                               z_samples: Iterable[float]) -> float:
    """Largest relative violation of ``F2(z) = +-(-1)**(k+1) F1(-z)`` over the sample points.

    The sign is ``+`` for the plus branch and ``-`` for the minus branch.
    Note this is an identity of the Kummer functions for any ``x`` once
    ``alpha = k - x`` is fixed, so it certifies the eigenfunction form and
    the parity assignment, not the eigenvalue itself.
    """
    expected_sign = choice.branch.sign * (-1) ** (choice.k + 1)
    worst = 0.0
    for z in z_samples:
        _, f2 = eigenfunction(x, choice, params, z)
        f1_mirror, _ = eigenfunction(x, choice, params, -z)
        worst = max(worst, abs(f2 - expected_sign * f1_mirror) / max(1.0, abs(f1_mirror)))
    return worst


def label_level(x: float, parity: ParityLabel, params: ModelParams, method: Method,
                branch: Branch = Branch.PLUS, oracle_residual: float = math.nan,
                flags: Iterable[str] = ()) -> LevelRecord:
    """Attach the nearest-baseline label, gauge factor and solution class to an eigenvalue."""
    label = nearest_baseline(x)
    choice = IndicialChoice(branch, label.k)
    flags = tuple(flags)
    gauge = gauge_factor(x, choice)
    if label.separatrix or abs(abs(gauge) - 0.5) < CLASS_TOL:
        flags += (FLAG_SEPARATRIX,)
    return LevelRecord(x=x, parity=parity, k=label.k, gauge_a=gauge,
                       solution_class=classify_solution(x, choice, params),
                       method=method, oracle_residual=oracle_residual, flags=flags)


@dataclass
class _OracleCache:
    params: ModelParams
    levels: dict = field(default_factory=dict)

    def residual(self, x: float, parity: ParityLabel) -> float:
        cached = self.levels.get(parity)
        if cached is None or cached[-1] < x + 1:
            cached = central_basis.oracle_levels(self.params, parity, max(x + 1, 1.0))
            self.levels[parity] = cached
        return float(np.min(np.abs(cached - x)))


def _persists(x: float, choice: IndicialChoice, params: ModelParams, n: int, persist_tol: float) -> bool:
    window = 20 * persist_tol
    roots = birkhoff_roots(choice, params, n + 1, x - window, x + window, grid_step=persist_tol / 4)
    return any(abs(r - x) <= persist_tol for r in roots)


def spurious_filter(candidates: Iterable[tuple[float, IndicialChoice]], params: ModelParams, n: int,
                    persist_tol: float = PERSIST_TOL, cross_tol: float = CROSS_TOL) -> list[LevelRecord]:
    """Check roots of ``b_n`` for persistence at order ``n + 1`` and against the oracle spectrum.

    Every candidate comes back as a :class:`LevelRecord`; rejected ones carry
    the ``spurious`` flag.
    """
    oracle = _OracleCache(params)
    records = []
    for x, choice in candidates:
        parity = implied_parity(choice, params)
        residual = oracle.residual(x, parity)
        keep = residual <= cross_tol and _persists(x, choice, params, n, persist_tol)
        records.append(label_level(x, parity, params, Method.BIRKHOFF, choice.branch, residual,
                                   () if keep else (FLAG_SPURIOUS,)))
    return records
