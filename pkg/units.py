"""Planck scale and natural-unit conventions.

Internally hbar = c = k_B = 1 and the cutoff scale is the unit:
E* = L* = P* = 1, so P* L* = hbar holds as 1 * 1 = 1. Every other module
consumes and produces quantities in these units; this module is the only
place SI values appear.
"""

import math
import logging
from dataclasses import dataclass

from scipy.constants import c as SPEED_OF_LIGHT, physical_constants

from config import (
    DEFAULT_ALPHA, PLANCK_MASS_GRAMS, DisplayKind,
    ERROR_OUT_OF_RANGE, ERROR_UNKNOWN_KIND,
)
from exceptions import DomainError
from models import DisplayValue

logger = logging.getLogger(__name__)

PLANCK_LENGTH_METERS = physical_constants["Planck length"][0]


@dataclass(frozen=True)
class PlanckScale:
    """The cutoff scale with its internal unit convention.

    Attributes:
        alpha: Fine-structure constant, 0 < alpha < 1
        energy_star: E* in internal units (always 1)
        length_star: L* in internal units (always 1)
        momentum_star: P* = E*/c in internal units (always 1)
        si_mass_star: Planck mass in grams, display only
    """
    alpha: float = DEFAULT_ALPHA
    energy_star: float = 1.0
    length_star: float = 1.0
    momentum_star: float = 1.0
    si_mass_star: float = PLANCK_MASS_GRAMS

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and 0 < self.alpha < 1):
            raise DomainError(ERROR_OUT_OF_RANGE.format(
                field="alpha", constraint="0 < alpha < 1", value=self.alpha
            ))
        if (self.energy_star, self.length_star, self.momentum_star) != (1.0, 1.0, 1.0):
            raise DomainError("internal units are fixed: E* = L* = P* = 1")

    @property
    def e_squared(self) -> float:
        """Elementary charge squared in E* L* units (e^2 = alpha hbar c)."""
        return self.alpha

    def si_factor(self, kind: DisplayKind) -> float:
        """SI value of one internal unit of the given kind."""
        mass_kg = self.si_mass_star * 1e-3
        if kind is DisplayKind.MASS:
            return self.si_mass_star
        if kind is DisplayKind.LENGTH:
            return PLANCK_LENGTH_METERS
        if kind is DisplayKind.ENERGY:
            return mass_kg * SPEED_OF_LIGHT**2
        return mass_kg * SPEED_OF_LIGHT


def make_scale(alpha: float = DEFAULT_ALPHA) -> PlanckScale:
    """Create a Planck scale with the given fine-structure constant.

    Args:
        alpha: Fine-structure constant (default 1/137.035999)

    Returns:
        PlanckScale with internal units fixed to 1

    Raises:
        DomainError if alpha is not in (0, 1)
    """
    scale = PlanckScale(alpha=float(alpha))
    logger.debug(f"Planck scale created with alpha = {scale.alpha!r}")
    return scale


def _resolve_kind(kind) -> DisplayKind:
    if isinstance(kind, DisplayKind):
        return kind
    try:
        return DisplayKind.from_label(kind)
    except ValueError:
        raise DomainError(ERROR_UNKNOWN_KIND.format(
            field="kind", value=kind,
            choices=", ".join(k.label for k in DisplayKind)
        ))


def to_display(value: float, kind, scale: PlanckScale = None) -> DisplayValue:
    """Convert an internal-unit value to SI display units.

    Args:
        value: Quantity in internal (cutoff) units
        kind: 'energy', 'length', 'momentum' or 'mass' (or a DisplayKind)
        scale: Planck scale to use (default scale if omitted)

    Returns:
        DisplayValue tagged with its SI unit
    """
    kind = _resolve_kind(kind)
    scale = scale or make_scale()
    return DisplayValue(value * scale.si_factor(kind), kind.unit)


def from_display(value: float, kind, scale: PlanckScale = None) -> float:
    """Convert an SI display value back to internal units."""
    kind = _resolve_kind(kind)
    scale = scale or make_scale()
    return value / scale.si_factor(kind)
