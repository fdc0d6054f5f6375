"""Sine integral and the adaptive quadrature engine.

Si(x) is evaluated by its power series below SI_CROSSOVER and through the
auxiliary functions f, g above it:

    Si(x) = pi/2 - f(x) cos x - g(x) sin x

where f + i g is obtained from the continued fraction of E1(ix).
"""

import math
import logging
from typing import Callable, Optional, Sequence, Tuple

from scipy.integrate import quad

from config import (
    SI_CROSSOVER, SI_SERIES_MAX_X, SI_ASYMPTOTIC_MIN_X, SI_SERIES_TOL,
    SI_CF_EPS, SI_CF_MAX_ITER,
    QUAD_MAX_EVALUATIONS, QUAD_POINTS_PER_INTERVAL,
    QUAD_DEFAULT_REL_TOL, QUAD_DEFAULT_ABS_TOL,
    ERROR_OUT_OF_RANGE, ERROR_NOT_FINITE,
    ERROR_SI_SERIES_DOMAIN, ERROR_SI_ASYMPTOTIC_DOMAIN, ERROR_NO_CONVERGENCE,
)
from exceptions import ConvergenceError, DomainError
from models import QuadratureResult

logger = logging.getLogger(__name__)

HALF_PI = 0.5 * math.pi
_TINY = 1e-300


def _check_argument(x: float) -> float:
    if not math.isfinite(x):
        raise DomainError(ERROR_NOT_FINITE.format(field="x", value=x))
    if x < 0:
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="x", constraint="x >= 0", value=x))
    return float(x)


def sinc_integrand(t: float) -> float:
    """sin t / t with the removable singularity at t = 0 set to 1."""
    if t == 0:
        return 1.0
    return math.sin(t) / t


def si_series(x: float, tol: float = SI_SERIES_TOL) -> float:
    """Sum the power series x - x^3/(3*3!) + x^5/(5*5!) - ...

    The sum stops once the magnitude of the next term drops below tol.

    Args:
        x: Argument, 0 <= x <= SI_SERIES_MAX_X
        tol: Truncation threshold (> 0)

    Returns:
        Partial sum approximating Si(x)

    Raises:
        DomainError if x lies outside the series domain or tol <= 0
    """
    if not (math.isfinite(x) and 0 <= x <= SI_SERIES_MAX_X):
        raise DomainError(ERROR_SI_SERIES_DOMAIN.format(bound=SI_SERIES_MAX_X, value=x))
    if not tol > 0:
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="tol", constraint="tol > 0", value=tol))

    x2 = x * x
    power = x  # (-1)^k x^(2k+1) / (2k+1)!
    k = 0
    total = 0.0
    term = power
    while True:
        total += term
        power *= -x2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
        term = power / (2 * k + 1)
        if abs(term) < tol:
            break
    return total


def si_auxiliary(x: float) -> Tuple[float, float]:
    """Auxiliary functions (f, g) of the sine integral for x >= SI_ASYMPTOTIC_MIN_X.

    Uses the modified Lentz evaluation of the continued fraction
    E1(ix) e^{ix} = 1/(1+ix - 1/(3+ix - 4/(5+ix - ...))), whose real part is g
    and whose imaginary part is -f.
    """
    if not (math.isfinite(x) and x >= SI_ASYMPTOTIC_MIN_X):
        raise DomainError(ERROR_SI_ASYMPTOTIC_DOMAIN.format(bound=SI_ASYMPTOTIC_MIN_X, value=x))

    b = complex(1.0, x)
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(2, SI_CF_MAX_ITER + 1):
        a = -float((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < SI_CF_EPS:
            break
    else:
        logger.warning(f"Sine-integral continued fraction not converged at x = {x!r}")
    return -h.imag, h.real


def si_asymptotic(x: float) -> float:
    """Si(x) from its large-argument form pi/2 - f cos x - g sin x.

    Args:
        x: Argument, x >= SI_ASYMPTOTIC_MIN_X

    Returns:
        Si(x)
    """
    f, g = si_auxiliary(x)
    return HALF_PI - f * math.cos(x) - g * math.sin(x)


def sine_integral(x: float) -> float:
    """Sine integral Si(x) = integral of sin t / t from 0 to x, for x >= 0.

    Args:
        x: Non-negative finite argument

    Returns:
        Si(x) with absolute error below 1e-12

    Raises:
        DomainError for negative or non-finite x
    """
    x = _check_argument(x)
    if x < SI_CROSSOVER:
        return si_series(x)
    return si_asymptotic(x)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = QUAD_DEFAULT_REL_TOL,
    abs_tol: float = QUAD_DEFAULT_ABS_TOL,
    points: Optional[Sequence[float]] = None,
    max_evaluations: int = QUAD_MAX_EVALUATIONS
) -> QuadratureResult:
    """Integrate f over [a, b] by adaptive Gauss-Kronrod bisection.

    The target accuracy is max(abs_tol, rel_tol * |value|). The rule is
    open, so f is never evaluated at the endpoints.

    Args:
        f: Real integrand, finite on [a, b]
        a: Lower limit
        b: Upper limit (a <= b)
        rel_tol: Relative tolerance (> 0)
        abs_tol: Absolute tolerance (> 0)
        points: Optional interior breakpoints (peaks, kinks)
        max_evaluations: Evaluation budget

    Returns:
        QuadratureResult with value, error estimate and evaluation count

    Raises:
        DomainError on invalid limits or tolerances
        ConvergenceError if the tolerance is not met within the budget
    """
    if not (math.isfinite(a) and math.isfinite(b)) or a > b:
        raise DomainError(ERROR_OUT_OF_RANGE.format(
            field="[a, b]", constraint="finite with a <= b", value=(a, b)
        ))
    if not (rel_tol > 0 and abs_tol > 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(
            field="tolerances", constraint="rel_tol > 0 and abs_tol > 0",
            value=(rel_tol, abs_tol)
        ))
    if a == b:
        return QuadratureResult(0.0, 0.0, 1)

    interior = None
    if points is not None:
        interior = sorted({float(p) for p in points if a < p < b}) or None
    limit = max(1, max_evaluations // QUAD_POINTS_PER_INTERVAL)

    result = quad(
        f, a, b,
        epsabs=abs_tol, epsrel=rel_tol,
        limit=limit, points=interior, full_output=1
    )
    value, error, info = result[0], result[1], result[2]
    evaluations = max(1, int(info.get("neval", 1)))

    if len(result) > 3 or not math.isfinite(value):
        reason = result[3] if len(result) > 3 else "non-finite integrand"
        reason = " ".join(str(reason).split())
        raise ConvergenceError(
            ERROR_NO_CONVERGENCE.format(a=a, b=b, reason=reason, value=value, error=error),
            best_estimate=value, error_estimate=error, evaluations=evaluations
        )

    logger.debug(f"Quadrature on [{a}, {b}] = {value!r} +/- {error:.3g} ({evaluations} evaluations)")
    return QuadratureResult(float(value), abs(float(error)), evaluations)
