"""Run-configuration validation for the cutoffqed command line.

Every check appends to a shared error list instead of raising, so one pass
reports all problems in a document. Defaults are filled into the resolved
RunConfig, which serializes back to a document that validates to itself.
"""

import copy
import json
import math
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from config import (
    COMMANDS, OUTPUT_FORMATS, SWEEP_SCALES, DEFAULT_ALPHA, DEFAULT_SEED, DEFAULT_MU,
    DEFAULT_SPIN_DEGENERACY, MC_MIN_SAMPLES, TrajectoryKind,
    ERROR_CONFIG_NOT_OBJECT, ERROR_COMMAND_MISSING, ERROR_UNKNOWN_KEY,
    ERROR_MISSING_KEY, ERROR_WRONG_TYPE, ERROR_CONSTRAINT, ERROR_INVALID_JSON,
)
from exceptions import ConfigError

logger = logging.getLogger(__name__)

REQUIRED = object()
MAX_SEED = 2**64
KERNEL_ORACLES = ("none", "quadrature", "mc")
INITIAL_STATES = ("constrained", "zero")

# (constraint text, predicate) pairs
Constraint = Tuple[str, Callable[[Any], bool]]
POSITIVE: Constraint = ("> 0", lambda x: x > 0)
NON_NEGATIVE: Constraint = (">= 0", lambda x: x >= 0)
NON_POSITIVE: Constraint = ("<= 0", lambda x: x <= 0)
UNIT_INTERVAL: Constraint = ("0 <= x <= 1", lambda x: 0 <= x <= 1)
OPEN_UNIT_INTERVAL: Constraint = ("0 < x < 1", lambda x: 0 < x < 1)
AT_LEAST_ONE: Constraint = (">= 1", lambda x: x >= 1)
MC_SAMPLE_COUNT: Constraint = (f">= {MC_MIN_SAMPLES}", lambda x: x >= MC_MIN_SAMPLES)
SEED_RANGE: Constraint = ("0 <= seed < 2**64", lambda x: 0 <= x < MAX_SEED)

Validator = Callable[[Any, str, List[str]], Any]


@dataclass(frozen=True)
class RunConfig:
    """A validated run configuration with every default filled.

    Attributes:
        command: One of config.COMMANDS
        parameters: Command-specific parameters; sweeps are numbers or
            {min, max, count, scale} objects
        output: {"path": str or None (stdout), "format": "csv" | "json"}
        alpha: Fine-structure constant
        seed: Seed for Monte-Carlo oracles and sampled mode shells
    """
    command: str
    parameters: Dict[str, Any]
    output: Dict[str, Any]
    alpha: float = DEFAULT_ALPHA
    seed: int = DEFAULT_SEED

    def to_dict(self) -> Dict[str, Any]:
        """Resolved document; validating it gives back an equal RunConfig."""
        return {
            "command": self.command,
            "parameters": self.parameters,
            "output": dict(self.output),
            "alpha": self.alpha,
            "seed": self.seed,
        }


def _type_name(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "string"
    if isinstance(value, list):
        return "array"
    if isinstance(value, dict):
        return "object"
    return type(value).__name__


def _join(path: str, key: Union[str, int]) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


# ==================== Scalar Validators ====================

def validate_number(
    value: Any,
    path: str,
    errors: List[str],
    constraint: Optional[Constraint] = None
) -> Optional[float]:
    """Validate a finite JSON number, optionally against a constraint.

    Returns:
        The value as float, or None after appending an error
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors.append(ERROR_WRONG_TYPE.format(path=path, expected="number", actual=_type_name(value)))
        return None
    if not math.isfinite(value):
        errors.append(ERROR_CONSTRAINT.format(path=path, constraint="finite", value=value))
        return None
    if constraint is not None and not constraint[1](value):
        errors.append(ERROR_CONSTRAINT.format(path=path, constraint=constraint[0], value=value))
        return None
    return float(value)


def validate_integer(
    value: Any,
    path: str,
    errors: List[str],
    constraint: Optional[Constraint] = None
) -> Optional[int]:
    if isinstance(value, bool) or not isinstance(value, int):
        errors.append(ERROR_WRONG_TYPE.format(path=path, expected="integer", actual=_type_name(value)))
        return None
    if constraint is not None and not constraint[1](value):
        errors.append(ERROR_CONSTRAINT.format(path=path, constraint=constraint[0], value=value))
        return None
    return value


def validate_boolean(value: Any, path: str, errors: List[str]) -> Optional[bool]:
    if not isinstance(value, bool):
        errors.append(ERROR_WRONG_TYPE.format(path=path, expected="boolean", actual=_type_name(value)))
        return None
    return value


def validate_choice(value: Any, path: str, errors: List[str], choices: Tuple) -> Any:
    if isinstance(value, bool) or value not in choices:
        errors.append(ERROR_CONSTRAINT.format(
            path=path, constraint="one of " + ", ".join(map(str, choices)), value=value
        ))
        return None
    return value


def validate_vector(
    value: Any,
    path: str,
    errors: List[str],
    nonzero: bool = False
) -> Optional[List[float]]:
    """Validate a 3-component numeric array."""
    if not isinstance(value, list):
        errors.append(ERROR_WRONG_TYPE.format(path=path, expected="array of 3 numbers", actual=_type_name(value)))
        return None
    if len(value) != 3:
        errors.append(ERROR_CONSTRAINT.format(path=path, constraint="3 components", value=value))
        return None
    components = [validate_number(x, _join(path, i), errors) for i, x in enumerate(value)]
    if any(c is None for c in components):
        return None
    if nonzero and not any(components):
        errors.append(ERROR_CONSTRAINT.format(path=path, constraint="nonzero vector", value=value))
        return None
    return components


def validate_sweep(
    value: Any,
    path: str,
    errors: List[str],
    constraint: Optional[Constraint] = None
) -> Union[float, Dict[str, Any], None]:
    """Validate a sweep parameter: a single number or {min, max, count, scale}.

    Returns:
        The number, or the range object with scale filled in
    """
    if not isinstance(value, dict):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            errors.append(ERROR_WRONG_TYPE.format(
                path=path, expected="number or range object", actual=_type_name(value)
            ))
            return None
        return validate_number(value, path, errors, constraint)

    resolved = validate_object(value, path, errors, {
        "min": (lambda v, p, e: validate_number(v, p, e, constraint), REQUIRED),
        "max": (lambda v, p, e: validate_number(v, p, e, constraint), REQUIRED),
        "count": (lambda v, p, e: validate_integer(v, p, e, AT_LEAST_ONE), REQUIRED),
        "scale": (lambda v, p, e: validate_choice(v, p, e, SWEEP_SCALES), "linear"),
    })
    if resolved is None:
        return None
    low, high, scale = resolved["min"], resolved["max"], resolved["scale"]
    if low is None or high is None or scale is None or resolved["count"] is None:
        return None
    if low > high:
        errors.append(ERROR_CONSTRAINT.format(path=path, constraint="min <= max", value=[low, high]))
        return None
    if scale == "log" and not low > 0:
        errors.append(ERROR_CONSTRAINT.format(path=_join(path, "min"), constraint="> 0 for log scale", value=low))
        return None
    return resolved


def sweep_values(sweep: Union[float, Dict[str, Any]]) -> List[float]:
    """Expand a validated sweep parameter into its grid, in sweep order."""
    if not isinstance(sweep, dict):
        return [float(sweep)]
    low, high, count = sweep["min"], sweep["max"], sweep["count"]
    if count == 1:
        return [float(low)]
    if sweep["scale"] == "log":
        return [float(x) for x in np.geomspace(low, high, count)]
    return [float(x) for x in np.linspace(low, high, count)]


# ==================== Structured Validators ====================

def validate_object(
    value: Any,
    path: str,
    errors: List[str],
    schema: Dict[str, Tuple[Validator, Any]]
) -> Optional[Dict[str, Any]]:
    """Validate an object against a schema of {key: (validator, default)}.

    Unknown keys and missing required keys are reported; defaults are
    filled for optional keys. Values that failed validation are None in
    the returned dict.
    """
    if not isinstance(value, dict):
        errors.append(ERROR_WRONG_TYPE.format(path=path or "config", expected="object", actual=_type_name(value)))
        return None
    for key in value:
        if key not in schema:
            errors.append(ERROR_UNKNOWN_KEY.format(path=_join(path, key)))
    resolved = {}
    for key, (validator, default) in schema.items():
        if key in value:
            resolved[key] = validator(value[key], _join(path, key), errors)
        elif default is REQUIRED:
            errors.append(ERROR_MISSING_KEY.format(path=_join(path, key)))
            resolved[key] = None
        else:
            resolved[key] = copy.deepcopy(default)
    return resolved


def validate_list(
    value: Any,
    path: str,
    errors: List[str],
    item_validator: Validator
) -> Optional[List[Any]]:
    if not isinstance(value, list):
        errors.append(ERROR_WRONG_TYPE.format(path=path, expected="array", actual=_type_name(value)))
        return None
    return [item_validator(item, _join(path, i), errors) for i, item in enumerate(value)]


def _number(constraint: Optional[Constraint] = None) -> Validator:
    return lambda v, p, e: validate_number(v, p, e, constraint)


def _integer(constraint: Optional[Constraint] = None) -> Validator:
    return lambda v, p, e: validate_integer(v, p, e, constraint)


def _sweep(constraint: Optional[Constraint] = None) -> Validator:
    return lambda v, p, e: validate_sweep(v, p, e, constraint)


def _choice(choices: Tuple) -> Validator:
    return lambda v, p, e: validate_choice(v, p, e, choices)


def _vector(nonzero: bool = False) -> Validator:
    return lambda v, p, e: validate_vector(v, p, e, nonzero)


def validate_charge(value: Any, path: str, errors: List[str]) -> Optional[Dict[str, Any]]:
    return validate_object(value, path, errors, {
        "e": (_number(), REQUIRED),
        "r": (_vector(), REQUIRED),
    })


def validate_mode(value: Any, path: str, errors: List[str]) -> Optional[Dict[str, Any]]:
    return validate_object(value, path, errors, {
        "k": (_vector(nonzero=True), REQUIRED),
        "theta": (_number(), 0.0),
    })


def validate_shell(value: Any, path: str, errors: List[str]) -> Optional[Dict[str, Any]]:
    return validate_object(value, path, errors, {
        "k": (_number(POSITIVE), REQUIRED),
        "count": (_integer(AT_LEAST_ONE), REQUIRED),
    })


_TRAJECTORY_SCHEMAS = {
    TrajectoryKind.STATIC.value: {},
    TrajectoryKind.CIRCULAR.value: {
        "radius": (_number(NON_NEGATIVE), REQUIRED),
        "angular_frequency": (_number(), REQUIRED),
    },
    TrajectoryKind.LINEAR_OSCILLATION.value: {
        "amplitude": (_vector(), REQUIRED),
        "angular_frequency": (_number(), REQUIRED),
    },
    TrajectoryKind.CUSTOM_SAMPLED.value: {
        "times": (lambda v, p, e: validate_list(v, p, e, _number()), REQUIRED),
        "positions": (lambda v, p, e: validate_list(v, p, e, _vector()), REQUIRED),
    },
}


def validate_trajectory(value: Any, path: str, errors: List[str]) -> Optional[Dict[str, Any]]:
    """Validate a trajectory record; the accepted keys depend on its kind."""
    if not isinstance(value, dict):
        errors.append(ERROR_WRONG_TYPE.format(path=path, expected="object", actual=_type_name(value)))
        return None
    kind = validate_choice(value.get("kind"), _join(path, "kind"), errors, tuple(_TRAJECTORY_SCHEMAS))
    if kind is None:
        return None
    schema = {
        "kind": (lambda v, p, e: v, REQUIRED),
        "charge": (_number(), REQUIRED),
    }
    if kind != TrajectoryKind.CUSTOM_SAMPLED.value:
        schema["center"] = (_vector(), [0.0, 0.0, 0.0])
    schema.update(_TRAJECTORY_SCHEMAS[kind])
    resolved = validate_object(value, path, errors, schema)

    if kind == TrajectoryKind.CUSTOM_SAMPLED.value:
        times, positions = resolved["times"], resolved["positions"]
        if times is not None and positions is not None and None not in times:
            if len(times) < 2 or any(b <= a for a, b in zip(times, times[1:])):
                errors.append(ERROR_CONSTRAINT.format(
                    path=_join(path, "times"), constraint="at least 2 strictly increasing samples", value=times
                ))
            elif len(positions) != len(times):
                errors.append(ERROR_CONSTRAINT.format(
                    path=_join(path, "positions"), constraint=f"{len(times)} samples (one per time)",
                    value=len(positions)
                ))
    return resolved


PARAMETER_SCHEMAS: Dict[str, Dict[str, Tuple[Validator, Any]]] = {
    "coulomb": {
        "charges": (lambda v, p, e: validate_list(v, p, e, validate_charge), REQUIRED),
        "include_self": (validate_boolean, True),
    },
    "kernel-sweep": {
        "r": (_sweep(NON_NEGATIVE), REQUIRED),
        "k_star": (_number(POSITIVE), 1.0),
        "oracle": (_choice(KERNEL_ORACLES), "none"),
        "n_samples": (_integer(MC_SAMPLE_COUNT), 100_000),
    },
    "self-energy": {
        "e": (_sweep(), 1.0),
    },
    "zero-point": {
        "V": (_sweep(NON_NEGATIVE), 1.0),
    },
    "ratio": {
        "V": (_sweep(NON_NEGATIVE), 1.0),
    },
    "state-count": {
        "V": (_sweep(NON_NEGATIVE), 1.0),
    },
    "spectrum": {
        "p": (_sweep(UNIT_INTERVAL), {"min": 0.01, "max": 1.0, "count": 100, "scale": "linear"}),
        "T": (_number(POSITIVE), REQUIRED),
        "mu": (_number(NON_POSITIVE), DEFAULT_MU),
    },
    "eos-sweep": {
        "T": (_sweep(POSITIVE), REQUIRED),
        "mu": (_sweep(NON_POSITIVE), DEFAULT_MU),
        "V": (_number(POSITIVE), 1.0),
        "g_s": (_choice((1, 2)), DEFAULT_SPIN_DEGENERACY),
        "derivatives": (validate_boolean, False),
    },
    "modes": {
        "volume": (_number(POSITIVE), 1.0),
        "modes": (lambda v, p, e: validate_list(v, p, e, validate_mode), []),
        "shells": (lambda v, p, e: validate_list(v, p, e, validate_shell), []),
        "trajectories": (lambda v, p, e: validate_list(v, p, e, validate_trajectory), []),
        "dt": (_number(POSITIVE), REQUIRED),
        "n_steps": (_integer(NON_NEGATIVE), REQUIRED),
        "sample_every": (_integer(AT_LEAST_ONE), 1),
        "initial": (_choice(INITIAL_STATES), "constrained"),
    },
}


def _validate_parameters(command: str, value: Any, errors: List[str]) -> Optional[Dict[str, Any]]:
    resolved = validate_object(value, "parameters", errors, PARAMETER_SCHEMAS[command])
    if resolved is None:
        return None
    if command == "kernel-sweep" and resolved["oracle"] != "none":
        r = resolved["r"]
        low = r["min"] if isinstance(r, dict) else r
        if low is not None and not low > 0:
            errors.append(ERROR_CONSTRAINT.format(
                path="parameters.r", constraint="> 0 when an oracle is requested", value=low
            ))
    if command == "spectrum" and resolved["mu"] == 0:
        p = resolved["p"]
        low = p["min"] if isinstance(p, dict) else p
        # occupancy diverges at p = 0 when mu = 0
        if low is not None and not low > 0:
            errors.append(ERROR_CONSTRAINT.format(
                path="parameters.p", constraint="> 0 when mu = 0", value=low
            ))
    if command == "modes" and resolved["modes"] == [] and resolved["shells"] == []:
        errors.append(ERROR_CONSTRAINT.format(
            path="parameters", constraint="at least one entry in modes or shells", value=value
        ))
    return resolved


def _validate_output(value: Any, errors: List[str]) -> Optional[Dict[str, Any]]:
    def path_validator(v, p, e):
        if v is not None and not isinstance(v, str):
            e.append(ERROR_WRONG_TYPE.format(path=p, expected="string or null", actual=_type_name(v)))
            return None
        return v

    return validate_object(value, "output", errors, {
        "path": (path_validator, None),
        "format": (_choice(OUTPUT_FORMATS), "csv"),
    })


def validate_document(document: Any) -> RunConfig:
    """Validate a parsed JSON document.

    Returns:
        RunConfig with defaults filled

    Raises:
        ConfigError carrying every error found
    """
    errors: List[str] = []
    if not isinstance(document, dict):
        raise ConfigError([ERROR_CONFIG_NOT_OBJECT])

    top = validate_object(document, "", errors, {
        "command": (lambda v, p, e: validate_choice(v, p, e, COMMANDS), None),
        "parameters": (lambda v, p, e: v, {}),
        "output": (lambda v, p, e: _validate_output(v, e), {"path": None, "format": "csv"}),
        "alpha": (_number(OPEN_UNIT_INTERVAL), DEFAULT_ALPHA),
        "seed": (_integer(SEED_RANGE), DEFAULT_SEED),
    })
    command = top["command"]
    if "command" not in document:
        errors.insert(0, ERROR_COMMAND_MISSING)

    parameters = None
    if command is not None:
        parameters = _validate_parameters(command, top["parameters"], errors)
    elif not isinstance(top["parameters"], dict):
        errors.append(ERROR_WRONG_TYPE.format(
            path="parameters", expected="object", actual=_type_name(top["parameters"])
        ))

    if errors:
        logger.warning(f"Config rejected with {len(errors)} error(s)")
        raise ConfigError(errors)
    return RunConfig(command, parameters, top["output"], top["alpha"], top["seed"])


def parse_document(config_text: Union[bytes, str]) -> Any:
    """Parse raw JSON; an empty document parses as an empty object.

    Raises:
        ConfigError for undecodable or malformed JSON
    """
    try:
        if isinstance(config_text, bytes):
            config_text = config_text.decode("utf-8")
        if not config_text.strip():
            return {}
        return json.loads(config_text)
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ConfigError([ERROR_INVALID_JSON.format(detail=str(e))])


def validate(config_text: Union[bytes, str]) -> RunConfig:
    """Parse and validate a JSON run configuration.

    An empty document reports the missing command rather than a parse error.

    Args:
        config_text: Raw JSON (bytes or str)

    Returns:
        RunConfig with defaults filled

    Raises:
        ConfigError carrying every error found
    """
    return validate_document(parse_document(config_text))
