"""Confluent hypergeometric function 1F1(a, b; z) by direct power series."""
from __future__ import annotations

import math

from .errors import NonConverged, PoleParameter

MAX_TERMS = 500


def kummer_1f1(a: float, b: float, z: float, tol: float = 1e-17, max_terms: int = MAX_TERMS) -> float:
    """Sum ``sum_m (a)_m z**m / ((b)_m m!)`` in double precision.

    Summation stops once the ratio of the current term to the running maximum
    of the partial sums drops below ``tol``, and only after the terms have
    started to decrease monotonically (``m > |a| + |z|``), so a near-cancelling
    Pochhammer factor cannot end the sum early. A terminating series (``a`` a
    non-positive integer) stops at its exact zero term.
    """
    nearest = round(b)
    if nearest <= 0 and abs(b - nearest) < 1e-12:
        raise PoleParameter(f"1F1 lower parameter b={b} is a non-positive integer")
    term = 1.0
    total = 1.0
    running = 1.0
    for m in range(max_terms):
        term *= (a + m) * z / ((b + m) * (m + 1))
        total += term
        running = max(running, abs(total))
        if term == 0.0:
            return total
        if m + 1 > abs(a) + abs(z) and abs(term) <= tol * running:
            return total
    raise NonConverged(f"1F1({a}, {b}; {z}) not converged in {max_terms} terms")


