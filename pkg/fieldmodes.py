"""Classical Fourier-mode field integration with Lorenz-constraint monitoring.

Each partial wave s carries the canonical pairs (phi_s, pi_s) and
(a_s, b_s), with a_s resolved in the mode basis (n1 = k/|k|, n2, n3).
With c = 1 and g = V/(8 pi) the canonical equations are

    phi' = -pi/g          pi' = g w^2 phi - sum_i e_i cos G_i
    a'   = +b/g           b'  = -g w^2 a + sum_i e_i v_i sin G_i

where G_i = k.r_i(t) + theta. Charges move on prescribed trajectories.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from config import (
    RESOLUTION_GUARD, DEFAULT_SEED, TrajectoryKind,
    ERROR_OUT_OF_RANGE, ERROR_RESOLUTION_GUARD, ERROR_NON_FINITE_STATE,
    ERROR_SUPERLUMINAL,
)
from exceptions import DomainError, IntegrationFailure
from models import Charge, ChargeConfig

logger = logging.getLogger(__name__)

STATE_WIDTH = 8  # phi, pi, a1, a2, a3, b1, b2, b3
HISTORY_COLUMNS = ("t", "mode", "phi", "pi", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2")


def _orthonormal_triad(k_vec: np.ndarray) -> np.ndarray:
    n1 = k_vec / np.linalg.norm(k_vec)
    # cross with the coordinate axis least aligned with n1
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(n1)))] = 1.0
    n2 = np.cross(n1, helper)
    n2 /= np.linalg.norm(n2)
    n3 = np.cross(n1, n2)
    return np.vstack([n1, n2, n3])


@dataclass(frozen=True, eq=False)
class Mode:
    """A partial wave with phase G = k.r + theta.

    Attributes:
        k_vec: Wave vector in 1/L*
        theta: Phase shift
        omega: Angular frequency |k| (c = 1)
        basis: Rows n1 = k/|k|, n2, n3 (orthonormal)
    """
    k_vec: Tuple[float, float, float]
    theta: float = 0.0
    omega: float = field(init=False)
    basis: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        k = np.asarray(self.k_vec, dtype=float)
        if k.shape != (3,) or not np.all(np.isfinite(k)):
            raise DomainError(ERROR_OUT_OF_RANGE.format(
                field="k_vec", constraint="finite 3-vector", value=self.k_vec
            ))
        omega = float(np.linalg.norm(k))
        if not omega > 0:
            raise DomainError(ERROR_OUT_OF_RANGE.format(field="|k_vec|", constraint="> 0", value=omega))
        object.__setattr__(self, "k_vec", tuple(float(x) for x in k))
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "basis", _orthonormal_triad(k))


@dataclass(frozen=True, eq=False)
class ModeSet:
    """Modes sharing a normalization volume V (in V*); coupling g = V/(8 pi)."""
    modes: Tuple[Mode, ...]
    volume: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.volume) and self.volume > 0):
            raise DomainError(ERROR_OUT_OF_RANGE.format(field="volume", constraint="volume > 0", value=self.volume))
        object.__setattr__(self, "modes", tuple(self.modes))

    def __len__(self) -> int:
        return len(self.modes)

    @property
    def g(self) -> float:
        return self.volume / (8.0 * math.pi)

    @property
    def wave_vectors(self) -> np.ndarray:
        return np.array([m.k_vec for m in self.modes], dtype=float).reshape(-1, 3)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([m.theta for m in self.modes], dtype=float)

    @property
    def omegas(self) -> np.ndarray:
        return np.array([m.omega for m in self.modes], dtype=float)

    @property
    def bases(self) -> np.ndarray:
        return np.array([m.basis for m in self.modes], dtype=float).reshape(-1, 3, 3)


def isotropic_shell(k: float, count: int, seed: int = DEFAULT_SEED) -> List[Mode]:
    """Modes of wavenumber k with uniformly sampled directions and phases.

    Args:
        k: Shell wavenumber (> 0)
        count: Number of modes (>= 1)
        seed: Seed of the Philox stream

    Returns:
        List of Mode objects, reproducible for a given seed
    """
    if not (math.isfinite(k) and k > 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="k", constraint="k > 0", value=k))
    if count < 1:
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="count", constraint="count >= 1", value=count))
    generator = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    cos_polar = generator.uniform(-1.0, 1.0, count)
    azimuth = generator.uniform(0.0, 2.0 * math.pi, count)
    phases = generator.uniform(0.0, 2.0 * math.pi, count)
    sin_polar = np.sqrt(1.0 - cos_polar**2)
    directions = np.column_stack([
        sin_polar * np.cos(azimuth), sin_polar * np.sin(azimuth), cos_polar
    ])
    return [Mode(tuple(k * d), float(theta)) for d, theta in zip(directions, phases)]


@dataclass
class ModeState:
    """Canonical field coordinates of one mode.

    Attributes:
        phi: Scalar potential coordinate
        pi: Momentum conjugate to phi
        a: Vector potential coordinates (a1, a2, a3) in the mode basis
        b: Momenta conjugate to a
        g: Coupling constant V/(8 pi)
    """
    phi: float
    pi: float
    a: np.ndarray
    b: np.ndarray
    g: float

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float).reshape(3)
        self.b = np.asarray(self.b, dtype=float).reshape(3)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([[self.phi, self.pi], self.a, self.b])

    @classmethod
    def from_vector(cls, vector: Sequence[float], g: float) -> 'ModeState':
        vector = np.asarray(vector, dtype=float)
        return cls(float(vector[0]), float(vector[1]), vector[2:5], vector[5:8], g)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Prescribed path of one point charge.

    Use the named constructors (static, circular, linear_oscillation,
    custom_sampled) rather than building instances directly.
    """
    kind: TrajectoryKind
    charge: float
    center: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    amplitude: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    frequency: float = 0.0
    spline: Optional[CubicSpline] = None

    @classmethod
    def static(cls, charge: float, center=(0.0, 0.0, 0.0)) -> 'Trajectory':
        return cls(TrajectoryKind.STATIC, float(charge), tuple(center))

    @classmethod
    def circular(cls, charge: float, radius: float, angular_frequency: float,
                 center=(0.0, 0.0, 0.0)) -> 'Trajectory':
        """Uniform circular motion in the plane z = center_z, starting on +x."""
        trajectory = cls(TrajectoryKind.CIRCULAR, float(charge), tuple(center),
                         (float(radius), 0.0, 0.0), float(angular_frequency))
        trajectory._check_speed(abs(radius * angular_frequency))
        return trajectory

    @classmethod
    def linear_oscillation(cls, charge: float, amplitude, angular_frequency: float,
                           center=(0.0, 0.0, 0.0)) -> 'Trajectory':
        """r(t) = center + amplitude * sin(w t)."""
        amplitude = tuple(float(x) for x in amplitude)
        trajectory = cls(TrajectoryKind.LINEAR_OSCILLATION, float(charge), tuple(center),
                         amplitude, float(angular_frequency))
        trajectory._check_speed(math.hypot(*amplitude) * abs(angular_frequency))
        return trajectory

    @classmethod
    def custom_sampled(cls, charge: float, times: Sequence[float],
                       positions: Sequence[Sequence[float]]) -> 'Trajectory':
        """Cubic-spline path through sampled positions; velocity is its derivative."""
        spline = CubicSpline(np.asarray(times, dtype=float),
                             np.asarray(positions, dtype=float).reshape(-1, 3), axis=0)
        return cls(TrajectoryKind.CUSTOM_SAMPLED, float(charge), spline=spline)

    @staticmethod
    def _check_speed(speed: float) -> None:
        if not speed < 1.0:
            raise DomainError(ERROR_SUPERLUMINAL.format(speed=speed))

    def evaluate(self, t) -> Tuple[np.ndarray, np.ndarray]:
        """Position and velocity at time(s) t; arrays of shape t.shape + (3,)."""
        t = np.asarray(t, dtype=float)
        center = np.asarray(self.center, dtype=float)
        if self.kind is TrajectoryKind.STATIC:
            position = np.broadcast_to(center, t.shape + (3,)).copy()
            return position, np.zeros_like(position)
        if self.kind is TrajectoryKind.CIRCULAR:
            radius, w = self.amplitude[0], self.frequency
            phase = w * t
            unit = np.stack([np.cos(phase), np.sin(phase), np.zeros_like(phase)], axis=-1)
            tangent = np.stack([-np.sin(phase), np.cos(phase), np.zeros_like(phase)], axis=-1)
            return center + radius * unit, radius * w * tangent
        if self.kind is TrajectoryKind.LINEAR_OSCILLATION:
            amplitude, w = np.asarray(self.amplitude), self.frequency
            position = center + np.sin(w * t)[..., None] * amplitude
            velocity = (w * np.cos(w * t))[..., None] * amplitude
            return position, velocity
        return self.spline(t), self.spline(t, 1)

    def max_speed(self, times: np.ndarray) -> float:
        _, velocity = self.evaluate(times)
        return float(np.max(np.linalg.norm(velocity, axis=-1), initial=0.0))


def _sources(modes: ModeSet, positions: np.ndarray, velocities: np.ndarray,
             charges: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Scalar sources (n_modes,) and mode-basis vector sources (n_modes, 3), both divided by g."""
    gamma = positions @ modes.wave_vectors.T + modes.thetas  # (n_charges, n_modes)
    scalar = charges @ np.cos(gamma)
    weighted = np.sin(gamma).T * charges  # (n_modes, n_charges)
    vector_lab = weighted @ velocities     # (n_modes, 3)
    vector = np.einsum("mij,mj->mi", modes.bases, vector_lab)
    return scalar / modes.g, vector / modes.g


def source_terms(
    mode: Mode,
    charges: ChargeConfig,
    velocities: Sequence[Sequence[float]],
    g: float
) -> Tuple[float, np.ndarray]:
    """Source terms of one mode for charges at their current positions.

    Args:
        mode: The partial wave
        charges: Charges at their positions r_i(t)
        velocities: Velocities dr_i/dt, same length as charges
        g: Coupling constant V/(8 pi)

    Returns:
        (scalar_source, vector_source): (1/g) sum e_i cos G_i and
        (1/g) sum e_i v_i sin G_i, the latter in the mode basis
    """
    velocities = np.asarray(velocities, dtype=float).reshape(-1, 3)
    if len(velocities) != len(charges):
        raise DomainError("charges and velocities must have the same length")
    scalar, vector = _sources(ModeSet((mode,), 8.0 * math.pi * g),
                              charges.positions, velocities, charges.values)
    return float(scalar[0]), vector[0]


def _residuals(y: np.ndarray, omegas: np.ndarray, g: float, scalar: np.ndarray) -> np.ndarray:
    c1 = omegas * y[:, 2] - y[:, 1] / g
    c2 = omegas * y[:, 5] / g - omegas**2 * y[:, 0] + scalar
    return np.column_stack([c1, c2])


def lorenz_residual(
    state: ModeState,
    mode: Mode,
    charges: ChargeConfig,
    velocities: Sequence[Sequence[float]]
) -> Tuple[float, float]:
    """Lorenz-constraint residuals (c1, c2) of a mode state.

    c1 = w a1 - pi/g and c2 = w b1/g - w^2 phi + scalar_source; both vanish
    on states that satisfy the constraint.
    """
    scalar, _ = source_terms(mode, charges, velocities, state.g)
    residual = _residuals(state.to_vector()[None, :], np.array([mode.omega]), state.g, np.array([scalar]))
    return float(residual[0, 0]), float(residual[0, 1])


def _charges_at(trajectories: Sequence[Trajectory], t: float) -> Tuple[ChargeConfig, np.ndarray]:
    positions, velocities = _charge_kinematics(trajectories, t)
    charges = ChargeConfig(tuple(
        Charge(trajectory.charge, tuple(position)) for trajectory, position in zip(trajectories, positions)
    ))
    return charges, velocities


def source_terms_at(
    mode: Mode,
    trajectories: Sequence[Trajectory],
    t: float,
    g: float
) -> Tuple[float, np.ndarray]:
    """source_terms with positions and velocities read off the trajectories at time t."""
    charges, velocities = _charges_at(trajectories, t)
    return source_terms(mode, charges, velocities, g)


def lorenz_residual_at(
    state: ModeState,
    mode: Mode,
    trajectories: Sequence[Trajectory],
    t: float
) -> Tuple[float, float]:
    """lorenz_residual for charges on their trajectories at time t."""
    charges, velocities = _charges_at(trajectories, t)
    return lorenz_residual(state, mode, charges, velocities)


def mode_energy(state: ModeState, omega: float) -> Tuple[float, float, float]:
    """Free-field energy of one mode split by sector.

    Returns:
        (vector_sector, scalar_sector, total) where
        vector_sector = (b^2 + g^2 w^2 a^2)/2g, scalar_sector = (pi^2 + g^2 w^2 phi^2)/2g
        and total = vector_sector - scalar_sector
    """
    g = state.g
    vector_sector = (state.b @ state.b + (g * omega) ** 2 * (state.a @ state.a)) / (2.0 * g)
    scalar_sector = (state.pi**2 + (g * omega * state.phi) ** 2) / (2.0 * g)
    return float(vector_sector), float(scalar_sector), float(vector_sector - scalar_sector)


@dataclass
class ModeHistory:
    """Sampled integration history.

    Attributes:
        times: Sample times, shape (n_samples,)
        states: Mode states, shape (n_samples, n_modes, 8)
        residuals: Lorenz residuals (c1, c2), shape (n_samples, n_modes, 2)
        g: Coupling constant of the mode set
    """
    times: np.ndarray
    states: np.ndarray
    residuals: np.ndarray
    g: float

    def state(self, sample: int, mode: int) -> ModeState:
        return ModeState.from_vector(self.states[sample, mode], self.g)

    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals), initial=0.0))

    def max_amplitude(self) -> float:
        return float(np.max(np.abs(self.states), initial=0.0))

    def to_rows(self) -> List[List[float]]:
        """Rows (t, mode, phi, pi, a1..a3, b1..b3, c1, c2) ordered by sample then mode."""
        rows = []
        for t, states, residuals in zip(self.times, self.states, self.residuals):
            for index, (y, c) in enumerate(zip(states, residuals)):
                rows.append([float(t), index, *map(float, y), *map(float, c)])
        return rows


def _charge_kinematics(trajectories: Sequence[Trajectory], t: float):
    if not trajectories:
        return np.zeros((0, 3)), np.zeros((0, 3))
    evaluated = [trajectory.evaluate(t) for trajectory in trajectories]
    return np.array([p for p, _ in evaluated]), np.array([v for _, v in evaluated])


def constrained_initial_state(modes: ModeSet, trajectories: Sequence[Trajectory], t: float = 0.0) -> np.ndarray:
    """State array with phi = scalar_source/w^2 and all else zero.

    For static charges this is the exact stationary solution; for moving
    charges it is a state with zero Lorenz residuals at time t.
    """
    charges = np.array([tr.charge for tr in trajectories], dtype=float)
    positions, velocities = _charge_kinematics(trajectories, t)
    scalar, _ = _sources(modes, positions, velocities, charges)
    y = np.zeros((len(modes), STATE_WIDTH))
    y[:, 0] = scalar / modes.omegas**2
    return y


def integrate(
    modes: ModeSet,
    trajectories: Sequence[Trajectory],
    dt: float,
    n_steps: int,
    initial: Optional[np.ndarray] = None,
    sample_every: int = 1,
    t0: float = 0.0
) -> ModeHistory:
    """Advance all modes with the classical fourth-order Runge-Kutta method.

    Args:
        modes: Mode set (wave vectors, phases, volume)
        trajectories: Prescribed charge trajectories
        dt: Time step (> 0) with dt * max(omega) <= RESOLUTION_GUARD
        n_steps: Number of steps (>= 0)
        initial: Initial state array (n_modes, 8); zero if omitted
        sample_every: Record every n-th step (the last step is always recorded)
        t0: Start time

    Returns:
        ModeHistory with states and Lorenz residuals at each recorded step

    Raises:
        DomainError if the resolution guard or the speed limit is violated
        IntegrationFailure if the state becomes non-finite
    """
    if not (math.isfinite(dt) and dt > 0):
        raise DomainError(ERROR_OUT_OF_RANGE.format(field="dt", constraint="dt > 0", value=dt))
    if n_steps < 0 or sample_every < 1:
        raise DomainError(ERROR_OUT_OF_RANGE.format(
            field="n_steps/sample_every", constraint="n_steps >= 0, sample_every >= 1",
            value=(n_steps, sample_every)
        ))
    omegas = modes.omegas
    resolution = dt * float(np.max(omegas, initial=0.0))
    if resolution > RESOLUTION_GUARD:
        raise DomainError(ERROR_RESOLUTION_GUARD.format(value=resolution, bound=RESOLUTION_GUARD))

    window = t0 + dt * np.arange(0, 2 * n_steps + 1) / 2.0
    for trajectory in trajectories:
        Trajectory._check_speed(trajectory.max_speed(window))

    g = modes.g
    charges = np.array([tr.charge for tr in trajectories], dtype=float)
    omega2 = omegas**2

    def sources_at(t: float):
        positions, velocities = _charge_kinematics(trajectories, t)
        return _sources(modes, positions, velocities, charges)

    def rhs(y: np.ndarray, scalar: np.ndarray, vector: np.ndarray) -> np.ndarray:
        dy = np.empty_like(y)
        dy[:, 0] = -y[:, 1] / g
        dy[:, 1] = g * (omega2 * y[:, 0] - scalar)
        dy[:, 2:5] = y[:, 5:8] / g
        dy[:, 5:8] = g * (vector - omega2[:, None] * y[:, 2:5])
        return dy

    y = np.zeros((len(modes), STATE_WIDTH)) if initial is None else np.array(initial, dtype=float)
    if y.shape != (len(modes), STATE_WIDTH):
        raise DomainError(f"initial state must have shape ({len(modes)}, {STATE_WIDTH}), got {y.shape}")

    times, states, residuals = [], [], []
    scalar, vector = sources_at(t0)

    def record(t: float, scalar_now: np.ndarray) -> None:
        times.append(t)
        states.append(y.copy())
        residuals.append(_residuals(y, omegas, g, scalar_now))

    record(t0, scalar)
    logger.info(f"Integrating {len(modes)} modes with {len(trajectories)} charges for {n_steps} steps")
    for step in range(1, n_steps + 1):
        t = t0 + (step - 1) * dt
        mid = sources_at(t + 0.5 * dt)
        end = sources_at(t + dt)
        k1 = rhs(y, scalar, vector)
        k2 = rhs(y + 0.5 * dt * k1, *mid)
        k3 = rhs(y + 0.5 * dt * k2, *mid)
        k4 = rhs(y + dt * k3, *end)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            logger.error(ERROR_NON_FINITE_STATE.format(step=step))
            raise IntegrationFailure(ERROR_NON_FINITE_STATE.format(step=step), step)
        scalar, vector = end
        if step % sample_every == 0 or step == n_steps:
            record(t0 + step * dt, scalar)

    return ModeHistory(np.array(times), np.array(states), np.array(residuals), g)
