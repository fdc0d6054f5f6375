"""Brute-force mode-sum oracles, zero-point energy and state counting.

The kernel oracles integrate the continuum mode sum directly, either as a
1-D quadrature over |k| or as a Monte-Carlo average over |k| and the
direction cosine mu between k and r_ij. Both must reproduce the closed form
(2/pi) Si(k* r)/r from coulomb.kernel.
"""

import math
import logging
from typing import List, Sequence

import numpy as np

from config import (
    MC_MIN_SAMPLES, MC_CHUNK_SIZE, DEFAULT_SEED,
    QUAD_MAX_EVALUATIONS, QUAD_POINTS_PER_INTERVAL,
    ERROR_OUT_OF_RANGE,
)
from coulomb import kernel, self_energy
from exceptions import DomainError
from models import McEstimate
from specfun import integrate_adaptive, sinc_integrand
from units import PlanckScale, make_scale

logger = logging.getLogger(__name__)

TWO_OVER_PI = 2.0 / math.pi
# Volume per quantum state under the cutoff, in V* = L*^3
VOLUME_PER_STATE = 6.0 * math.pi**2
ZERO_POINT_DENSITY = 1.0 / (16.0 * math.pi**2)
ORACLE_REL_TOL = 1e-12
ORACLE_ABS_TOL = 1e-13
_MAX_SEED = 2**64


def _require_positive(name: str, value: float) -> float:
    if not (math.isfinite(value) and value > 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field=name, constraint=f"{name} > 0", value=value))
    return float(value)


def _require_volume(V: float) -> float:
    if not (math.isfinite(V) and V >= 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="V", constraint="V >= 0", value=V))
    return float(V)


def kernel_closed_form(r: float, k_star: float = 1.0) -> float:
    """(2/pi) Si(k* r)/r, the kernel for an arbitrary cutoff wavenumber."""
    _require_positive("k_star", k_star)
    return k_star * kernel(k_star * r)


def _oscillation_points(r: float, k_star: float) -> List[float]:
    """One breakpoint per period of sin(k r) so each panel holds one oscillation."""
    period = 2.0 * math.pi / r
    count = int(k_star / period)
    if count < 2:
        return []
    cap = QUAD_MAX_EVALUATIONS // (2 * QUAD_POINTS_PER_INTERVAL)
    count = min(count, cap)
    step = k_star / (count + 1)
    return [step * n for n in range(1, count + 1)]


def kernel_quadrature_oracle(
    r: float,
    k_star: float = 1.0,
    rel_tol: float = ORACLE_REL_TOL,
    abs_tol: float = ORACLE_ABS_TOL
) -> float:
    """Integrate (2/pi) sin(k r)/(k r) over 0 <= k <= k* numerically.

    Args:
        r: Separation in L* (> 0)
        k_star: Cutoff wavenumber in 1/L* (> 0)

    Returns:
        Kernel value in 1/L*

    Raises:
        ConvergenceError if the quadrature does not converge
    """
    r = _require_positive("r", r)
    k_star = _require_positive("k_star", k_star)
    result = integrate_adaptive(
        lambda k: sinc_integrand(k * r), 0.0, k_star,
        rel_tol=rel_tol, abs_tol=abs_tol,
        points=_oscillation_points(r, k_star)
    )
    return TWO_OVER_PI * result.value


def _shard_moments(generator: np.random.Generator, size: int, r: float, k_star: float):
    k = generator.uniform(0.0, k_star, size)
    mu = generator.uniform(-1.0, 1.0, size)
    # the 1/2 normalizes the direction-cosine measure on [-1, 1]
    values = (4.0 / math.pi) * k_star * 0.5 * np.cos(k * r * mu)
    mean = float(np.mean(values))
    m2 = float(np.sum((values - mean) ** 2))
    return size, mean, m2


def kernel_mc_oracle(
    r_i: Sequence[float],
    r_j: Sequence[float],
    k_star: float = 1.0,
    n_samples: int = 1_000_000,
    seed: int = DEFAULT_SEED
) -> McEstimate:
    """Monte-Carlo average of the kernel over |k| and the direction cosine.

    Cross-phase terms vanish in the phase average and are dropped; only
    k ~ U[0, k*] and mu ~ U[-1, 1] are sampled. Samples are drawn in fixed-size
    shards, each from a Philox stream spawned off the seed, and the shard
    moments are merged in shard order.

    Args:
        r_i: Position of the first charge (L*)
        r_j: Position of the second charge (L*)
        k_star: Cutoff wavenumber (1/L*)
        n_samples: Number of samples (>= 1000)
        seed: 64-bit seed

    Returns:
        McEstimate; identical inputs give a bit-identical estimate

    Raises:
        DomainError for coincident positions or too few samples
    """
    r = math.dist(r_i, r_j)
    if r == 0:
        raise DomainError("coincident positions: use kernel_quadrature_oracle's r -> 0 limit")
    k_star = _require_positive("k_star", k_star)
    if n_samples < MC_MIN_SAMPLES:
        raise DomainError(ERROR_OUT_OF_RANGE.format(
            field="n_samples", constraint=f"n_samples >= {MC_MIN_SAMPLES}", value=n_samples
        ))
    if not 0 <= seed < _MAX_SEED:
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="seed", constraint="0 <= seed < 2**64", value=seed))

    n_shards = -(-n_samples // MC_CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(n_shards)

    count, mean, m2 = 0, 0.0, 0.0
    for index, child in enumerate(children):
        size = min(MC_CHUNK_SIZE, n_samples - index * MC_CHUNK_SIZE)
        generator = np.random.Generator(np.random.Philox(child))
        n_b, mean_b, m2_b = _shard_moments(generator, size, r, k_star)
        total = count + n_b
        delta = mean_b - mean
        mean += delta * n_b / total
        m2 += m2_b + delta * delta * count * n_b / total
        count = total

    std_error = math.sqrt(m2 / (count - 1) / count)
    logger.debug(f"MC kernel at r = {r!r}: {mean!r} +/- {std_error:.3g} ({count} samples, seed {seed})")
    return McEstimate(mean, std_error, count, seed)


def zero_point_energy(V: float) -> float:
    """Zero-point energy of the cutoff radiation field, V/(16 pi^2) in E*.

    Args:
        V: Volume in V* = L*^3

    Returns:
        Energy in units of E*
    """
    return ZERO_POINT_DENSITY * _require_volume(V)


def zero_point_energy_integral(V: float) -> float:
    """Zero-point energy from the mode integral (V/4pi^2) * integral of k^3 over [0, k*]."""
    V = _require_volume(V)
    result = integrate_adaptive(lambda k: k**3, 0.0, 1.0, rel_tol=1e-13, abs_tol=1e-15)
    return V / (4.0 * math.pi**2) * result.value


def state_count(V: float) -> float:
    """Maximum number of quantum states N = V/(6 pi^2) in a volume V (in V*)."""
    return _require_volume(V) / VOLUME_PER_STATE


def volume_for_states(N: float) -> float:
    """Quantized volume V = 6 pi^2 N V* holding N states."""
    if not (math.isfinite(N) and N >= 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="N", constraint="N >= 0", value=N))
    return N * VOLUME_PER_STATE


def zero_point_per_state() -> float:
    """Zero-point energy per quantum state, E0/N = 3/8 E*."""
    return ZERO_POINT_DENSITY * VOLUME_PER_STATE


def zero_point_to_self_energy_ratio(V: float, scale: PlanckScale = None) -> float:
    """Ratio of the field's zero-point energy in V to the electron self-energy.

    Equals V/(16 pi alpha); about 2.73 V/V* for alpha = 1/137.
    """
    scale = scale or make_scale()
    return zero_point_energy(V) / self_energy(1.0, scale)
