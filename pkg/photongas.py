"""Photon gas with an upper momentum limit p <= P*.

Cutoff units throughout: p and energies in P* = E* = 1, T in E*/k_B,
V in V* = L*^3, dispersion eps(p) = p. The modified spectral law is

    mean_energy(p) = eps / (exp((eps - mu)/T) - (1 - eps))

and every state function is a quadrature over 0 <= p <= 1 with the density
of states g_s V p^2 / (2 pi^2).
"""

import math
import logging
from typing import List, Tuple

import numpy as np
from scipy.special import zeta

from config import (
    OCCUPANCY_SERIES_THRESHOLD, CUTOFF_SERIES_THRESHOLD,
    THERMO_REL_TOL, THERMO_ABS_TOL, DERIVATIVE_REL_STEP, INV_TWO_PI_SQUARED,
    DEFAULT_MU, ERROR_OUT_OF_RANGE,
)
from exceptions import DomainError
from models import StateFunctions, ThermoPoint
from specfun import integrate_adaptive

logger = logging.getLogger(__name__)

_POLYLOG_MAX_TERMS = 2_000_000


def _check_spectral_args(p: float, T: float, mu: float) -> None:
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="p", constraint="0 <= p <= 1", value=p))
    if not (math.isfinite(T) and T > 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="T", constraint="T > 0", value=T))
    if not (math.isfinite(mu) and mu <= 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="mu", constraint="mu <= 0", value=mu))


def _small_argument(eps: float, T: float, mu: float) -> bool:
    return mu == 0 and (eps - mu) / T < OCCUPANCY_SERIES_THRESHOLD


def _occupancy(eps: float, T: float, mu: float) -> float:
    x = (eps - mu) / T
    if _small_argument(eps, T, mu):
        if eps == 0:
            return math.inf
        # exp(x) - 1 + eps = eps/T + eps + eps^2/(2 T^2) + ...
        return 1.0 / (eps / T + eps + eps * eps / (2.0 * T * T))
    if x > 1.0:
        q = math.exp(-x)
        return q / (1.0 - (1.0 - eps) * q)
    return 1.0 / (math.expm1(x) + eps)


def occupancy(p: float, T: float, mu: float = DEFAULT_MU) -> float:
    """Mean occupation number 1/(exp((eps - mu)/T) - (1 - eps)) of level eps = p.

    Diverges only at p = 0 with mu = 0.
    """
    _check_spectral_args(p, T, mu)
    return _occupancy(float(p), T, mu)


def _mean_energy(eps: float, T: float, mu: float) -> float:
    if _small_argument(eps, T, mu):
        return 1.0 / (1.0 / T + 1.0 + eps / (2.0 * T * T))
    return eps * _occupancy(eps, T, mu)


def mean_energy(p: float, T: float, mu: float = DEFAULT_MU) -> float:
    """Mean spectral energy of the level eps = p under the momentum cutoff.

    Args:
        p: Momentum in P* (0 <= p <= 1)
        T: Temperature in E*/k_B (> 0)
        mu: Chemical potential in E* (<= 0)

    Returns:
        Mean energy in E*; e^{-1/T} at p = 1 with mu = 0

    Raises:
        DomainError outside the domain above
    """
    _check_spectral_args(p, T, mu)
    return _mean_energy(float(p), T, mu)


def bose_mean_energy(p: float, T: float, mu: float = DEFAULT_MU) -> float:
    """Standard Bose law eps/(exp((eps - mu)/T) - 1), the E* -> infinity limit."""
    _check_spectral_args(p, T, mu)
    eps = float(p)
    x = (eps - mu) / T
    if x == 0:
        return T
    if x > 1.0:
        q = math.exp(-x)
        return eps * q / (1.0 - q)
    return eps / math.expm1(x)


def _log_term(p: float, T: float, mu: float) -> float:
    """ln(1 - (1 - p) A) / (1 - p) with A = exp(-(p - mu)/T), finite at p = 1."""
    q = 1.0 - p
    x = (p - mu) / T
    A = math.exp(-x)
    if q < CUTOFF_SERIES_THRESHOLD:
        return -A - 0.5 * q * A * A
    qA = q * A
    if qA < 0.5:
        return math.log1p(-qA) / q
    # 1 - q A = -expm1(-x) + p A, free of cancellation near p = 0
    return math.log(-math.expm1(-x) + p * A) / q


def _thermal_points(T: float) -> List[float]:
    return [x for x in (T, 10.0 * T, 40.0 * T) if 0.0 < x < 1.0]


def _density_integral(integrand, T: float) -> float:
    def guarded(p: float) -> float:
        return 0.0 if p == 0.0 else integrand(p)

    result = integrate_adaptive(
        guarded, 0.0, 1.0,
        rel_tol=THERMO_REL_TOL, abs_tol=THERMO_ABS_TOL,
        points=_thermal_points(T)
    )
    return result.value


def free_energy(point: ThermoPoint) -> float:
    """Free energy F = -PV of the cutoff photon gas.

    F = g_s (V/2pi^2) T * integral over [0, 1] of p^2/(1-p) ln(1 - (1-p) e^{-(p-mu)/T}) dp

    Raises:
        ConvergenceError if the quadrature fails
    """
    T, mu = point.T, point.mu
    integral = _density_integral(lambda p: p * p * _log_term(p, T, mu), T)
    return point.g_s * point.V * INV_TWO_PI_SQUARED * T * integral


def internal_energy(point: ThermoPoint) -> float:
    T, mu = point.T, point.mu
    integral = _density_integral(lambda p: p * p * _mean_energy(p, T, mu), T)
    return point.g_s * point.V * INV_TWO_PI_SQUARED * integral


def particle_number(point: ThermoPoint) -> float:
    T, mu = point.T, point.mu
    integral = _density_integral(lambda p: p * p * _occupancy(p, T, mu), T)
    return point.g_s * point.V * INV_TWO_PI_SQUARED * integral


def state_functions(point: ThermoPoint) -> StateFunctions:
    """F, U, N, S and P at a state point.

    U and N are mode sums of the mean energy and occupancy; S follows from
    S = (U - F - mu N)/T and P = -F/V.
    """
    F = free_energy(point)
    U = internal_energy(point)
    N = particle_number(point)
    S = (U - F - point.mu * N) / point.T
    P = -F / point.V
    logger.debug(f"State functions at {point}: F={F!r} U={U!r} N={N!r} S={S!r}")
    return StateFunctions(F, U, N, S, P)


def _polylog(s: int, z: float) -> float:
    if z >= 1.0:
        return float(zeta(s))
    if z <= 0.0:
        return 0.0
    n_terms = min(_POLYLOG_MAX_TERMS, int(math.ceil(math.log(1e-17) / math.log(z))) + 1)
    k = np.arange(1, n_terms + 1, dtype=float)
    return float(np.sum(np.power(z, k) / k**s))


def classical_limits(point: ThermoPoint) -> Tuple[float, float, float]:
    """Standard Planck-gas (no cutoff) F, U, N at the same state point.

    Returns:
        (F_ref, U_ref, N_ref); at mu = 0, g_s = 2 these are
        -pi^2 T^4 V/45, pi^2 T^4 V/15 and 2 zeta(3) T^3 V/pi^2
    """
    T, V, g_s = point.T, point.V, point.g_s
    z = math.exp(point.mu / T)
    li3, li4 = _polylog(3, z), _polylog(4, z)
    prefactor = g_s * V / math.pi**2
    return -prefactor * T**4 * li4, 3.0 * prefactor * T**4 * li4, prefactor * T**3 * li3


def numeric_derivatives(point: ThermoPoint, rel_step: float = DERIVATIVE_REL_STEP) -> Tuple[float, float]:
    """Finite-difference -dF/dmu and -dF/dT, cross-checks for N and S.

    Central differences, except in mu when mu + h would leave mu <= 0; there a
    second-order backward difference is used.

    Returns:
        (minus_dF_dmu, minus_dF_dT)
    """
    T, mu, V, g_s = point.T, point.mu, point.V, point.g_s

    def F(T_: float, mu_: float) -> float:
        return free_energy(ThermoPoint(T_, mu_, V, g_s))

    h_T = rel_step * T
    minus_dF_dT = -(F(T + h_T, mu) - F(T - h_T, mu)) / (2.0 * h_T)

    h_mu = rel_step * max(abs(mu), T)
    if mu + h_mu <= 0:
        dF_dmu = (F(T, mu + h_mu) - F(T, mu - h_mu)) / (2.0 * h_mu)
    else:
        dF_dmu = (3.0 * F(T, mu) - 4.0 * F(T, mu - h_mu) + F(T, mu - 2.0 * h_mu)) / (2.0 * h_mu)
    return -dF_dmu, minus_dF_dT


def spectral_row(p: float, T: float, mu: float = DEFAULT_MU) -> List[float]:
    """[p, mean_energy, occupancy, bose_mean_energy] for the spectrum table."""
    return [float(p), mean_energy(p, T, mu), occupancy(p, T, mu), bose_mean_energy(p, T, mu)]
