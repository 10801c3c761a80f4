"""Oracle spectrum from the parity-adapted tridiagonal matrices in the unshifted oscillator basis.

The eigensolver is self-contained: Sturm sequence counting plus bisection
inside the Gershgorin interval, with inverse iteration for eigenvectors.
Eigenvalues are reported as ``E`` (the zero-point energy absorbed), so the
shifted energy is ``E + g**2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConverged
from .model import ModelParams, ParityLabel

DEFAULT_TOL = 1e-12
DOUBLING_TOL = 1e-8
MAX_TRUNCATION = 6400


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: np.ndarray
    offdiag: np.ndarray
    parity: ParityLabel | None = None

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out


@dataclass(frozen=True)
class SpectrumSlice:
    eigenvalues: np.ndarray
    truncation: int
    parity: ParityLabel | None

    def shifted(self, params: ModelParams) -> np.ndarray:
        return self.eigenvalues + params.g * params.g


def build_block(parity: ParityLabel, params: ModelParams, n_trunc: int) -> TridiagonalMatrix:
    """Truncated ``n_trunc x n_trunc`` block of the Hamiltonian for one reflection parity."""
    if n_trunc < 1:
        raise ValueError("n_trunc must be at least 1")
    n = np.arange(n_trunc, dtype=float)
    alternating = np.where(np.arange(n_trunc) % 2 == 0, 1.0, -1.0)
    diag = n + parity.sign * alternating * params.delta
    offdiag = np.sqrt(n[1:]) * params.g
    return TridiagonalMatrix(diag, offdiag, parity)


def gershgorin_bounds(m: TridiagonalMatrix) -> tuple[float, float]:
    radius = np.zeros(m.size)
    radius[:-1] += np.abs(m.offdiag)
    radius[1:] += np.abs(m.offdiag)
    return float(np.min(m.diag - radius)), float(np.max(m.diag + radius))


def _pivmin(m: TridiagonalMatrix) -> float:
    scale = max(1.0, float(np.max(np.abs(m.diag))), float(np.max(np.abs(m.offdiag), initial=0.0)))
    return np.finfo(float).tiny / np.finfo(float).eps * scale * scale


def sturm_count(m: TridiagonalMatrix, lam) -> np.ndarray:
    """Number of eigenvalues strictly below each shift in ``lam`` (vectorised over shifts)."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    off2 = m.offdiag * m.offdiag
    pivmin = _pivmin(m)
    count = np.zeros(lam.shape, dtype=int)
    q = m.diag[0] - lam
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count += q < 0
    for i in range(1, m.size):
        q = m.diag[i] - lam - off2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def eigenvalues_sturm(m: TridiagonalMatrix, count: int, tol: float = DEFAULT_TOL) -> SpectrumSlice:
    """Lowest ``count`` eigenvalues by bisection on the Sturm count.

    All indices are bisected together; each bracket is shrunk until its width
    is below ``tol`` (or until it stops shrinking in floating point).
    """
    if not 1 <= count <= m.size:
        raise ValueError(f"count must be in [1, {m.size}], got {count}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo_bound, hi_bound = gershgorin_bounds(m)
    pad = 2 * np.finfo(float).eps * max(abs(lo_bound), abs(hi_bound), 1.0)
    lo = np.full(count, lo_bound - pad)
    hi = np.full(count, hi_bound + pad)
    index = np.arange(count)
    while True:
        mid = 0.5 * (lo + hi)
        active = (hi - lo > tol) & (mid > lo) & (mid < hi)
        if not active.any():
            break
        below = sturm_count(m, mid)
        # eigenvalue i lies below mid iff more than i eigenvalues are below mid
        go_left = below > index
        hi = np.where(active & go_left, mid, hi)
        lo = np.where(active & ~go_left, mid, lo)
    return SpectrumSlice(0.5 * (lo + hi), m.size, m.parity)


def inverse_iteration(m: TridiagonalMatrix, lam: float, iterations: int = 3) -> np.ndarray:
    """Eigenvector for a converged eigenvalue ``lam`` via shifted tridiagonal solves."""
    n = m.size
    shift = lam + 1e3 * np.finfo(float).eps * max(1.0, abs(lam))
    v = np.ones(n) / math.sqrt(n)
    for _ in range(iterations):
        v = _solve_shifted(m, shift, v)
        v /= np.max(np.abs(v))
    return v


def _solve_shifted(m: TridiagonalMatrix, shift: float, rhs: np.ndarray) -> np.ndarray:
    # Gaussian elimination with partial pivoting on the tridiagonal (M - shift I)
    n = m.size
    if n == 1:
        d = m.diag[0] - shift
        return rhs / (d if d != 0 else np.finfo(float).eps)
    tiny = np.finfo(float).eps * max(1.0, float(np.max(np.abs(m.diag))))
    a = np.zeros(n)  # sub-diagonal
    b = m.diag - shift  # diagonal
    c = np.zeros(n)  # super-diagonal
    d = np.zeros(n)  # second super-diagonal created by pivoting
    a[1:] = m.offdiag
    c[:-1] = m.offdiag
    b = b.copy()
    r = rhs.astype(float).copy()
    for i in range(n - 1):
        if abs(a[i + 1]) > abs(b[i]):
            b[i], a[i + 1] = a[i + 1], b[i]
            c[i], b[i + 1] = b[i + 1], c[i]
            if i + 2 < n:
                d[i], c[i + 1] = c[i + 1], d[i]
            r[i], r[i + 1] = r[i + 1], r[i]
        if b[i] == 0:
            b[i] = tiny
        factor = a[i + 1] / b[i]
        b[i + 1] -= factor * c[i]
        if i + 2 < n:
            c[i + 1] -= factor * d[i]
        r[i + 1] -= factor * r[i]
    if b[-1] == 0:
        b[-1] = tiny
    x = np.zeros(n)
    x[-1] = r[-1] / b[-1]
    x[-2] = (r[-2] - c[-2] * x[-1]) / b[-2]
    for i in range(n - 3, -1, -1):
        x[i] = (r[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i]
    return x


def default_truncation(params: ModelParams, count: int) -> int:
    return max(64, 4 * count + math.ceil(50 * params.g * params.g))


def oracle_spectrum(params: ModelParams, parity: ParityLabel, count: int, n_trunc: int | None = None,
                    max_trunc: int = MAX_TRUNCATION) -> SpectrumSlice:
    """Lowest ``count`` levels of one parity, certified by doubling the truncation.

    The truncation is doubled until the reported eigenvalues change by less
    than ``1e-8``; the larger truncation's values are returned.
    """
    n = default_truncation(params, count) if n_trunc is None else max(n_trunc, count)
    current = eigenvalues_sturm(build_block(parity, params, n), count)
    while 2 * n <= max_trunc:
        refined = eigenvalues_sturm(build_block(parity, params, 2 * n), count)
        if np.max(np.abs(refined.eigenvalues - current.eigenvalues)) < DOUBLING_TOL:
            return refined
        n, current = 2 * n, refined
    raise NonConverged(f"doubling check failed up to truncation {n} for {count} levels at {params}")


def oracle_levels(params: ModelParams, parity: ParityLabel, x_max: float) -> np.ndarray:
    """Shifted energies of all oracle levels of one parity with ``x <= x_max``, plus the next one above."""
    count = max(4, int(math.ceil(x_max + abs(params.delta))) + 3)
    while True:
        xs = oracle_spectrum(params, parity, count).shifted(params)
        if xs[-1] > x_max:
            below = np.searchsorted(xs, x_max, side="right")
            return xs[: below + 1]
        count *= 2
