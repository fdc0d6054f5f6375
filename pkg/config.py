"""Configuration and constants for the cutoffqed toolkit."""

import os
import logging
import math
from enum import Enum
from dotenv import load_dotenv

# Load environment variables from .env file (logging verbosity only)
load_dotenv()
LOG_LEVEL = os.getenv("CUTOFFQED_LOG_LEVEL", "INFO").upper()

TOOL_NAME = "cutoffqed"
TOOL_VERSION = "1.0.0"

# ==================== Planck Scale ====================

DEFAULT_ALPHA = 1 / 137.035999
# Planck mass as quoted for display, in grams
PLANCK_MASS_GRAMS = 2.18e-5

# ==================== Sine Integral ====================

SI_CROSSOVER = 4.0
SI_SERIES_MAX_X = 8.0        # series still loses < 1e-14 to cancellation here
SI_ASYMPTOTIC_MIN_X = 2.0    # continued fraction converges fast above this
SI_SERIES_TOL = 1e-17
SI_CF_EPS = 1e-15
SI_CF_MAX_ITER = 200

# ==================== Quadrature ====================

QUAD_MAX_EVALUATIONS = 1_000_000
QUAD_POINTS_PER_INTERVAL = 21  # Gauss-Kronrod 21-point rule
QUAD_DEFAULT_REL_TOL = 1e-10
QUAD_DEFAULT_ABS_TOL = 1e-12

# ==================== Coulomb Kernel ====================

KERNEL_TAYLOR_THRESHOLD = 1e-4

# ==================== Monte Carlo ====================

MC_MIN_SAMPLES = 1_000
MC_CHUNK_SIZE = 250_000
DEFAULT_SEED = 20161

# ==================== Mode Integration ====================

RESOLUTION_GUARD = 0.1  # max dt * omega

# ==================== Photon Gas ====================

DEFAULT_MU = 0.0
DEFAULT_SPIN_DEGENERACY = 2
OCCUPANCY_SERIES_THRESHOLD = 1e-6
CUTOFF_SERIES_THRESHOLD = 1e-4
THERMO_REL_TOL = 1e-10
THERMO_ABS_TOL = 1e-300
DERIVATIVE_REL_STEP = 1e-4
INV_TWO_PI_SQUARED = 1 / (2 * math.pi**2)

# ==================== Enums ====================


class DisplayKind(Enum):
    """Physical kinds that can be converted to SI display units.

    Values are tuples of (kind name, unit label)
    """
    ENERGY = ("energy", "J")
    LENGTH = ("length", "m")
    MOMENTUM = ("momentum", "kg m/s")
    MASS = ("mass", "g")

    @property
    def label(self) -> str:
        """Get the kind name used in configs and on the command line."""
        return self.value[0]

    @property
    def unit(self) -> str:
        """Get the SI unit label for this kind."""
        return self.value[1]

    @classmethod
    def from_label(cls, label: str) -> 'DisplayKind':
        """Get display kind by name.

        Raises:
            ValueError if label is not a known kind
        """
        for kind in cls:
            if kind.label == label:
                return kind
        raise ValueError(f"Unknown display kind: {label}")


class TrajectoryKind(Enum):
    STATIC = "static"
    CIRCULAR = "circular"
    LINEAR_OSCILLATION = "linear-oscillation"
    CUSTOM_SAMPLED = "custom-sampled"


COMMANDS = (
    "coulomb", "kernel-sweep", "self-energy", "zero-point", "ratio",
    "state-count", "spectrum", "eos-sweep", "modes",
)
OUTPUT_FORMATS = ("csv", "json")
SWEEP_SCALES = ("linear", "log")

# ==================== Exit Status ====================

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_ERROR = 3

# ==================== Error Messages ====================

ERROR_OUT_OF_RANGE = "{field} must satisfy {constraint}, got {value!r}"
ERROR_NOT_FINITE = "{field} must be finite, got {value!r}"
ERROR_UNKNOWN_KIND = "Unknown {field}: {value!r}. Expected one of: {choices}"
ERROR_SI_SERIES_DOMAIN = (
    "si_series is valid for 0 <= x <= {bound}, got {value!r}; "
    "use si_asymptotic instead"
)
ERROR_SI_ASYMPTOTIC_DOMAIN = (
    "si_asymptotic is valid for x >= {bound}, got {value!r}; use si_series instead"
)
ERROR_NO_CONVERGENCE = (
    "Quadrature on [{a}, {b}] did not converge: {reason} "
    "(best estimate {value!r}, error estimate {error!r})"
)
ERROR_RESOLUTION_GUARD = (
    "dt * max(omega) = {value:.6g} exceeds the resolution guard {bound}"
)
ERROR_NON_FINITE_STATE = "Mode state became non-finite at step {step}"
ERROR_SUPERLUMINAL = "Trajectory speed {speed:.6g} must stay below 1 (c = 1)"

# Config validation messages
ERROR_CONFIG_NOT_OBJECT = "config must be a JSON object"
ERROR_COMMAND_MISSING = "command missing"
ERROR_UNKNOWN_KEY = "{path}: unknown key"
ERROR_MISSING_KEY = "{path}: required key missing"
ERROR_WRONG_TYPE = "{path}: expected {expected}, got {actual}"
ERROR_CONSTRAINT = "{path}: must satisfy {constraint}, got {value!r}"
ERROR_INVALID_JSON = "invalid JSON: {detail}"

# ==================== Logging Configuration ====================

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler()  # stderr, keeps stdout free for tables
    ]
)
logger = logging.getLogger(TOOL_NAME)
