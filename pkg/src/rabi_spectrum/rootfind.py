"""Pole-aware bracketing on a uniform grid, refined by plain bisection.

Functions built on the displaced-oscillator recurrence have simple poles at
integer ``x``. Grid points within ``pole_exclusion`` of an integer are
dropped and a sign change is only accepted between neighbouring valid points,
so a pole's sign flip is never reported as a root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import LostBracket, PoleAtBaseline

DEFAULT_GRID_STEP = 0.01
DEFAULT_POLE_EXCLUSION = 1e-3
DEFAULT_ROOT_TOL = 1e-10


@dataclass(frozen=True)
class ScanConfig:
    x_min: float
    x_max: float
    grid_step: float = DEFAULT_GRID_STEP
    pole_exclusion: float = DEFAULT_POLE_EXCLUSION
    root_tol: float = DEFAULT_ROOT_TOL

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.grid_step <= 0 or self.root_tol <= 0 or self.pole_exclusion < 0:
            raise ValueError("grid_step and root_tol must be positive, pole_exclusion non-negative")

    def grid(self) -> np.ndarray:
        n = int(math.floor((self.x_max - self.x_min) / self.grid_step + 1e-9))
        xs = self.x_min + self.grid_step * np.arange(n + 1)
        if xs[-1] < self.x_max - 1e-12:
            xs = np.append(xs, self.x_max)
        return xs

    def in_exclusion(self, x: float) -> bool:
        # poles sit on the non-negative integers only
        return self.pole_exclusion > 0 and x > -0.5 and abs(x - round(x)) < self.pole_exclusion


@dataclass(frozen=True)
class BracketedRoot:
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    refined: float
    iterations: int = 0


def _evaluate(f: Callable[[float], float], x: float) -> float | None:
    try:
        value = f(x)
    except PoleAtBaseline:
        return None
    return value if math.isfinite(value) else None


def scan_and_bracket(f: Callable[[float], float], cfg: ScanConfig, refine: bool = True) -> list[BracketedRoot]:
    """Bracket every sign change of ``f`` between adjacent valid grid points.

    With ``refine`` (the default) each bracket is bisected down to
    ``cfg.root_tol``; otherwise ``refined`` holds the bracket midpoint.
    """
    brackets = []
    prev_x = prev_v = None
    for x in cfg.grid():
        x = float(x)
        v = None if cfg.in_exclusion(x) else _evaluate(f, x)
        if v is None:
            prev_x = prev_v = None
            continue
        if v == 0.0:
            brackets.append(BracketedRoot(x, x, v, v, x))
            prev_x = prev_v = None
            continue
        if prev_v is not None and (prev_v < 0) != (v < 0):
            brackets.append(BracketedRoot(prev_x, x, prev_v, v, 0.5 * (prev_x + x)))
        prev_x, prev_v = x, v
    if refine:
        brackets = [b if b.lo == b.hi else refine_bisection(f, b, cfg.root_tol) for b in brackets]
    return brackets


def refine_bisection(f: Callable[[float], float], bracket: BracketedRoot,
                     root_tol: float = DEFAULT_ROOT_TOL) -> BracketedRoot:
    """Bisect a sign-changing bracket until its width is at most ``root_tol``."""
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if not (f_lo < 0) != (f_hi < 0) or f_lo == 0 or f_hi == 0:
        raise ValueError(f"bracket [{lo}, {hi}] does not enclose a sign change")
    iterations = bracket.iterations
    while hi - lo > root_tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        try:
            f_mid = f(mid)
        except PoleAtBaseline as exc:
            raise LostBracket(f"pole hit at x={mid} while refining [{lo}, {hi}]") from exc
        iterations += 1
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return replace(bracket, lo=lo, hi=hi, f_lo=f_lo, f_hi=f_hi, refined=0.5 * (lo + hi), iterations=iterations)


def find_roots(f: Callable[[float], float], cfg: ScanConfig) -> list[float]:
    return [b.refined for b in scan_and_bracket(f, cfg)]
