"""Regularized Coulomb kernel, configuration energy and self-energy.

With a momentum cutoff k* = 1/L* the pair interaction becomes

    R(r) = (2/pi) Si(r) / r        (r in units of L*)

which tends to 1/r for r >> 1 and to the finite value 2/pi at r = 0.
"""

import math
import logging
from itertools import combinations
from typing import List

from config import KERNEL_TAYLOR_THRESHOLD, ERROR_OUT_OF_RANGE, ERROR_NOT_FINITE
from exceptions import DomainError
from models import ChargeConfig
from specfun import sine_integral
from units import PlanckScale, make_scale

logger = logging.getLogger(__name__)

TWO_OVER_PI = 2.0 / math.pi


def kernel(r: float) -> float:
    """Regularized pair kernel (2/pi) Si(r)/r in units of 1/L*.

    Args:
        r: Separation in units of L* (>= 0)

    Returns:
        Positive, finite kernel value; 2/pi at r = 0

    Raises:
        DomainError for negative or non-finite r
    """
    if not math.isfinite(r):
        raise DomainError(ERROR_NOT_FINITE.format(field="r", value=r))
    if r < 0:
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="r", constraint="r >= 0", value=r))
    if r < KERNEL_TAYLOR_THRESHOLD:
        r2 = r * r
        return TWO_OVER_PI * (1.0 - r2 / 18.0 + r2 * r2 / 600.0)
    return TWO_OVER_PI * sine_integral(r) / r


def _pair_terms(config: ChargeConfig, include_self: bool) -> List[float]:
    charges = config.charges
    terms = []
    if include_self:
        # 1/2 * e_i^2 * kernel(0)
        terms.extend(0.5 * c.e * c.e * TWO_OVER_PI for c in charges)
    for ci, cj in combinations(charges, 2):
        # symmetric double sum: the 1/2 cancels the (i, j)/(j, i) pair
        terms.append(ci.e * cj.e * kernel(math.dist(ci.position, cj.position)))
    return terms


def config_energy(config: ChargeConfig, include_self: bool = True) -> float:
    """Regularized Coulomb energy 1/2 sum_i sum_j e_i e_j R(r_ij).

    Coincident distinct charges use the r = 0 kernel limit. The terms are
    reduced with math.fsum, so the result does not depend on charge order.

    Args:
        config: Point charges (e in elementary charges, positions in L*)
        include_self: Keep the i = j self-energy terms

    Returns:
        Energy in units of e^2 / L*
    """
    energy = math.fsum(_pair_terms(config, include_self))
    logger.debug(f"Configuration energy of {len(config)} charges = {energy!r} e^2/L*")
    return energy


def config_energy_estar(
    config: ChargeConfig,
    scale: PlanckScale = None,
    include_self: bool = True
) -> float:
    """Configuration energy converted to E* via e^2 = alpha hbar c."""
    scale = scale or make_scale()
    return config_energy(config, include_self) * scale.e_squared


def coulomb_limit_energy(config: ChargeConfig) -> float:
    """Unregularized pair energy 1/2 sum_{i != j} e_i e_j / r_ij (no cutoff).

    Raises:
        DomainError if two charges coincide (the bare energy diverges)
    """
    terms = []
    for ci, cj in combinations(config.charges, 2):
        r = math.dist(ci.position, cj.position)
        if r == 0:
            raise DomainError("bare Coulomb energy diverges for coincident charges")
        terms.append(ci.e * cj.e / r)
    return math.fsum(terms)


def self_energy(e: float, scale: PlanckScale = None) -> float:
    """Self-energy of a point charge at the cutoff, e^2/(pi L*) = (alpha/pi) e^2 E*.

    Args:
        e: Charge in units of the elementary charge
        scale: Planck scale supplying alpha

    Returns:
        Self-energy in units of E*
    """
    if not math.isfinite(e):
        raise DomainError(ERROR_NOT_FINITE.format(field="e", value=e))
    scale = scale or make_scale()
    return e * e * scale.e_squared / math.pi
