"""Data models for the cutoffqed toolkit."""

import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from config import (
    DEFAULT_MU, DEFAULT_SPIN_DEGENERACY,
    ERROR_OUT_OF_RANGE, ERROR_NOT_FINITE,
)
from exceptions import DomainError


class QuadratureResult(NamedTuple):
    """Named tuple for an adaptive quadrature result.

    Attributes:
        value: Integral estimate
        error_estimate: Absolute error estimate (>= 0)
        evaluations: Number of integrand evaluations (>= 1)
    """
    value: float
    error_estimate: float
    evaluations: int


class McEstimate(NamedTuple):
    """Named tuple for a seeded Monte-Carlo mean.

    Attributes:
        mean: Sample mean of the estimator
        std_error: Standard error of the mean (>= 0)
        samples: Number of samples drawn (>= 2)
        seed: 64-bit seed the samples were drawn from
    """
    mean: float
    std_error: float
    samples: int
    seed: int


class DisplayValue(NamedTuple):
    """A value converted to SI display units."""
    value: float
    unit: str


class StateFunctions(NamedTuple):
    """Named tuple for the photon-gas state functions in cutoff units.

    Attributes:
        F: Free energy
        U: Internal energy
        N: Particle number
        S: Entropy
        P: Pressure
    """
    F: float
    U: float
    N: float
    S: float
    P: float


class Charge(NamedTuple):
    """A point charge.

    Attributes:
        e: Charge in units of the elementary charge (may be negative)
        position: 3-D position in units of L*
    """
    e: float
    position: Tuple[float, float, float]


def _require_finite(name: str, value: float) -> float:
    if not math.isfinite(value):
        raise DomainError(ERROR_NOT_FINITE.format(field=name, value=value))
    return float(value)


@dataclass(frozen=True)
class ChargeConfig:
    """An ensemble of point charges; coincident positions are allowed."""
    charges: Tuple[Charge, ...] = ()

    def __post_init__(self):
        checked = []
        for index, charge in enumerate(self.charges):
            e, position = charge
            if len(position) != 3:
                raise DomainError(ERROR_OUT_OF_RANGE.format(
                    field=f"charges[{index}].position",
                    constraint="3 components",
                    value=position
                ))
            e = _require_finite(f"charges[{index}].e", e)
            position = tuple(
                _require_finite(f"charges[{index}].position", x) for x in position
            )
            checked.append(Charge(e, position))
        object.__setattr__(self, "charges", tuple(checked))

    @classmethod
    def from_records(cls, records: Sequence[Dict]) -> 'ChargeConfig':
        """Build a config from JSON records of the form {"e": .., "r": [x, y, z]}.

        Args:
            records: Sequence of charge records

        Returns:
            ChargeConfig instance
        """
        return cls(tuple(Charge(rec["e"], tuple(rec["r"])) for rec in records))

    def __len__(self) -> int:
        return len(self.charges)

    @property
    def values(self) -> np.ndarray:
        """Charge values as an array of shape (n,)."""
        return np.array([c.e for c in self.charges], dtype=float)

    @property
    def positions(self) -> np.ndarray:
        """Positions as an array of shape (n, 3)."""
        return np.array([c.position for c in self.charges], dtype=float).reshape(-1, 3)

    def to_records(self) -> List[Dict]:
        return [{"e": c.e, "r": list(c.position)} for c in self.charges]


@dataclass(frozen=True)
class ThermoPoint:
    """A photon-gas state point in cutoff units.

    Attributes:
        T: Temperature in E*/k_B (> 0)
        mu: Chemical potential in E* (<= 0)
        V: Volume in V* = L*^3 (> 0)
        g_s: Spin degeneracy (1 or 2)
    """
    T: float
    mu: float = DEFAULT_MU
    V: float = 1.0
    g_s: int = field(default=DEFAULT_SPIN_DEGENERACY)

    def __post_init__(self):
        for name in ("T", "mu", "V"):
            _require_finite(name, getattr(self, name))
        if not self.T > 0:
            raise DomainError(ERROR_OUT_OF_RANGE.format(field="T", constraint="T > 0", value=self.T))
        if not self.mu <= 0:
            raise DomainError(ERROR_OUT_OF_RANGE.format(field="mu", constraint="mu <= 0", value=self.mu))
        if not self.V > 0:
            raise DomainError(ERROR_OUT_OF_RANGE.format(field="V", constraint="V > 0", value=self.V))
        if self.g_s not in (1, 2):
            raise DomainError(ERROR_OUT_OF_RANGE.format(field="g_s", constraint="g_s in {1, 2}", value=self.g_s))
