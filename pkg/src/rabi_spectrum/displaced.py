"""Displaced-oscillator coefficient recurrence and the transcendental functions built on it.

``f_n`` obeys ``(n+1) f_{n+1} = omega_n f_n - f_{n-1}`` with ``f_0 = 1``.
Its Poincare ratios are ``0`` (minimal, normalisable) and ``1/(2g)``
(dominant). Moroz's ``F0`` picks the minimal solution by backward recursion;
Braak's ``G+-`` uses the forward solution and the reflection symmetry.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleAtBaseline, Underflow
from .model import ModelParams, ParityLabel

POLE_GUARD = 1e-9
DEFAULT_BRAAK_TERMS = 60
DEFAULT_MOROZ_TERMS = 40
SERIES_TOL = 1e-10


@dataclass(frozen=True)
class RecurrenceState:
    coeffs: np.ndarray
    e_coeffs: np.ndarray | None
    x: float
    params: ModelParams


@dataclass(frozen=True)
class PoincareRoots:
    t_min: float
    t_dom: float


def poincare_roots(params: ModelParams) -> PoincareRoots:
    params.require_coupling()
    return PoincareRoots(0.0, 1.0 / (2.0 * params.g))


def _check_pole(n: int, x: float, pole_guard: float):
    if abs(n - x) < pole_guard:
        raise PoleAtBaseline(n, x)


def omega(n: int, x: float, params: ModelParams, pole_guard: float = POLE_GUARD) -> float:
    params.require_coupling()
    _check_pole(n, x, pole_guard)
    g, delta = params.g, params.delta
    return (n + 4 * g * g - x - delta * delta / (n - x)) / (2 * g)


def forward_f(x: float, params: ModelParams, n_max: int, pole_guard: float = POLE_GUARD) -> RecurrenceState:
    """Forward-generated coefficients ``f_0 .. f_{n_max}`` and the companion ``e_m``."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    f = np.empty(n_max + 1)
    f[0] = 1.0
    f[1] = omega(0, x, params, pole_guard)
    for n in range(1, n_max):
        f[n + 1] = (omega(n, x, params, pole_guard) * f[n] - f[n - 1]) / (n + 1)
    m = np.arange(n_max + 1)
    e = -params.delta * f / (m - x)
    return RecurrenceState(f, e, x, params)


def moroz_f0(x: float, params: ModelParams, n_trunc: int = DEFAULT_MOROZ_TERMS,
             pole_guard: float = POLE_GUARD) -> float:
    """Boundary defect of the backward (minimal) solution at ``n = 0``.

    The recurrence is seeded with ``f[n_trunc + 1] = 0`` and ``f[n_trunc] = 1``
    and run down to ``f[0]``; after max-norm rescaling the function returns
    ``f[1] - omega_0 f[0]``, which vanishes exactly when the minimal solution
    also satisfies the first equation with ``f[-1] = 0``.
    """
    params.require_coupling()
    if n_trunc < 1:
        raise ValueError("n_trunc must be positive")
    f = np.zeros(n_trunc + 2)
    f[n_trunc] = 1.0
    for n in range(n_trunc, 0, -1):
        f[n - 1] = omega(n, x, params, pole_guard) * f[n] - (n + 1) * f[n + 1]
        if abs(f[n - 1]) > 1e150:
            f /= abs(f[n - 1])
    scale = np.max(np.abs(f))
    if scale == 0 or not math.isfinite(scale):
        raise Underflow(f"backward recurrence degenerate at x={x}")
    f /= scale
    return float(f[1] - omega(0, x, params, pole_guard) * f[0])


def braak_g(x: float, parity: ParityLabel, params: ModelParams, n_trunc: int = DEFAULT_BRAAK_TERMS,
            pole_guard: float = POLE_GUARD) -> float:
    """Partial sum of Braak's parity-resolved function up to ``n_trunc``."""
    params.require_coupling()
    f = forward_f(x, params, n_trunc, pole_guard).coeffs
    n = np.arange(n_trunc + 1)
    weights = params.g ** n
    return float(np.sum(weights * f * (1.0 + parity.sign * params.delta / (n - x))))


def braak_g_converged(x: float, parity: ParityLabel, params: ModelParams,
                      n_trunc: int = DEFAULT_BRAAK_TERMS) -> tuple[float, bool]:
    """Value of ``G`` with a convergence flag from comparing ``n_trunc`` and ``n_trunc + 10`` terms."""
    value = braak_g(x, parity, params, n_trunc)
    longer = braak_g(x, parity, params, n_trunc + 10)
    return value, abs(longer - value) < SERIES_TOL
