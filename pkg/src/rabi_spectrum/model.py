"""Shared domain types and energy conventions.

All solvers work in the shifted energy ``x = E + g**2`` with the oscillator
quantum as the unit of energy. Juddian baselines sit at integer ``x``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``g`` and half level splitting ``delta`` of the Rabi Hamiltonian."""

    g: float
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.g) and math.isfinite(self.delta)):
            raise ValueError(f"parameters must be finite, got g={self.g}, delta={self.delta}")
        if self.g < 0:
            raise ValueError(f"coupling g must be non-negative, got {self.g}")

    @property
    def parity_swapped(self) -> bool:
        """True when ``delta < 0``; the symmetric and anti-symmetric towers trade places."""
        return self.delta < 0

    def require_coupling(self):
        """Recurrence methods divide by ``2g`` and need ``g > 0``."""
        if self.g <= 0:
            raise ValueError("recurrence-based methods require g > 0")

    def to_energy(self, x: float) -> float:
        return x - self.g * self.g

    def to_shifted(self, energy: float) -> float:
        return energy + self.g * self.g


class ParityLabel(enum.Enum):
    SYMMETRIC = 1
    ANTISYMMETRIC = -1

    @property
    def sign(self) -> int:
        return self.value

    def flipped(self) -> "ParityLabel":
        return ParityLabel(-self.value)

    @property
    def short(self) -> str:
        return "sym" if self is ParityLabel.SYMMETRIC else "anti"

    @classmethod
    def parse(cls, text: str) -> "ParityLabel":
        key = text.strip().lower()
        if key in ("sym", "symmetric", "+", "plus"):
            return cls.SYMMETRIC
        if key in ("anti", "anti-symmetric", "antisymmetric", "-", "minus"):
            return cls.ANTISYMMETRIC
        raise ValueError(f"unknown parity label {text!r}")


class Method(str, enum.Enum):
    DIAG = "diag"
    MOROZ = "moroz"
    BRAAK = "braak"
    BIRKHOFF = "birkhoff"


class SolutionClass(enum.IntEnum):
    """Classes of solutions by the integrality of ``x`` and of the gauge factor."""

    GENERIC = 1
    HALF_INTEGER = 2
    JUDDIAN = 3
    INTEGER_GAUGE = 4


FLAG_UNVERIFIED = "unverified"
FLAG_SPURIOUS = "spurious"
FLAG_SEPARATRIX = "separatrix-adjacent"


@dataclass(frozen=True)
class LevelRecord:
    """One labelled eigenvalue produced by one of the methods."""

    x: float
    parity: ParityLabel
    k: int
    gauge_a: float
    solution_class: SolutionClass
    method: Method
    oracle_residual: float = math.nan
    flags: tuple[str, ...] = field(default=())

    @property
    def accepted(self) -> bool:
        return FLAG_SPURIOUS not in self.flags

    def energy(self, params: ModelParams) -> float:
        return params.to_energy(self.x)


class BaselineLabel(NamedTuple):
    k: int
    distance: float
    separatrix: bool


def baseline_energy(k: int, params: ModelParams) -> float:
    """Energy ``E_k = k - g**2`` of the k-th Juddian baseline."""
    if k < 0:
        raise ValueError(f"baseline index must be non-negative, got {k}")
    return k - params.g * params.g


def nearest_baseline(x: float) -> BaselineLabel:
    """Label ``x`` with the closest non-negative baseline index and the signed distance ``x - k``.

    Below ``x = -0.5`` no baseline is closer than the separatrix; ``k = 0`` is
    returned with a warning and the distance then exceeds one half.
    """
    if x < -0.5:
        warnings.warn(f"x={x} lies below the lowest separatrix; labelled k=0", RuntimeWarning, stacklevel=2)
        return BaselineLabel(0, x, False)
    k = max(0, math.floor(x + 0.5))
    distance = x - k
    separatrix = abs(distance) == 0.5
    return BaselineLabel(k, distance, separatrix)
