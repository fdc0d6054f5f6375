"""Command-line front end: a JSON run config in, one CSV or JSON table out."""

import argparse
import logging
import math
import sys
from itertools import combinations, product
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from config import (
    TOOL_NAME, TOOL_VERSION, OUTPUT_FORMATS, TrajectoryKind, DisplayKind,
    EXIT_OK, EXIT_CONFIG_ERROR, EXIT_NUMERIC_ERROR,
)
from coulomb import config_energy, config_energy_estar, coulomb_limit_energy, self_energy
from exceptions import ConfigError, ConvergenceError, DomainError, IntegrationFailure, SweepRowError
from fieldmodes import (
    HISTORY_COLUMNS, Mode, ModeSet, Trajectory,
    constrained_initial_state, integrate, isotropic_shell,
)
from models import ChargeConfig, ThermoPoint
from modesum import (
    kernel_closed_form, kernel_mc_oracle, kernel_quadrature_oracle,
    state_count, zero_point_energy, zero_point_energy_integral,
    zero_point_per_state, zero_point_to_self_energy_ratio,
)
from photongas import classical_limits, numeric_derivatives, spectral_row, state_functions
from sweep_table import SweepTable, build_metadata
from units import PlanckScale, make_scale, to_display
from validation import MAX_SEED, RunConfig, parse_document, sweep_values, validate_document

logger = logging.getLogger(__name__)

NUMERIC_ERRORS = (DomainError, ConvergenceError, IntegrationFailure)

Rows = List[List[float]]


class RunResult(NamedTuple):
    """Outcome of one run.

    Attributes:
        table: The computed table (None on failure)
        status: Process exit status
        message: Diagnostic for a failed run, empty on success
    """
    table: Optional[SweepTable]
    status: int
    message: str = ""


def _sweep_rows(
    names: Sequence[str],
    grid: Sequence[Tuple],
    compute: Callable[..., List[float]]
) -> Rows:
    """Evaluate compute over the grid in order, tagging failures with their row."""
    rows = []
    for index, args in enumerate(grid):
        try:
            rows.append(compute(*args))
        except NUMERIC_ERRORS as e:
            raise SweepRowError(index, dict(zip(names, args)), e) from e
    return rows


def _single_sweep(parameters: Dict[str, Any], name: str) -> List[Tuple[float]]:
    return [(x,) for x in sweep_values(parameters[name])]


# ==================== Command Handlers ====================

def _coulomb(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    charges = ChargeConfig.from_records(config.parameters["charges"])
    include_self = config.parameters["include_self"]
    coincident = any(
        a.position == b.position for a, b in combinations(charges.charges, 2)
    )

    def row() -> List[float]:
        # the bare pair energy is undefined once two charges coincide
        bare = math.nan if coincident else coulomb_limit_energy(charges)
        return [
            len(charges),
            config_energy(charges, include_self),
            config_energy_estar(charges, scale, include_self),
            config_energy(charges, include_self=False),
            bare,
        ]

    headers = ["n_charges", "energy", "energy_estar", "pair_energy", "bare_pair_energy"]
    return headers, _sweep_rows([], [()], row)


def _kernel_sweep(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    p = config.parameters
    k_star, oracle = p["k_star"], p["oracle"]
    headers = ["r", "kernel", "kernel_r"]
    if oracle == "quadrature":
        headers.append("kernel_quadrature")
    elif oracle == "mc":
        headers.extend(["kernel_mc", "kernel_mc_std_error"])

    def row(r: float) -> List[float]:
        value = kernel_closed_form(r, k_star)
        values = [r, value, value * r]
        if oracle == "quadrature":
            values.append(kernel_quadrature_oracle(r, k_star))
        elif oracle == "mc":
            estimate = kernel_mc_oracle((0.0, 0.0, 0.0), (r, 0.0, 0.0), k_star, p["n_samples"], config.seed)
            values.extend([estimate.mean, estimate.std_error])
        return values

    return headers, _sweep_rows(["r"], _single_sweep(p, "r"), row)


def _self_energy(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    def row(e: float) -> List[float]:
        energy = self_energy(e, scale)
        return [e, energy, to_display(energy, DisplayKind.ENERGY, scale).value]

    return ["e", "E0", "E0_joules"], _sweep_rows(["e"], _single_sweep(config.parameters, "e"), row)


def _zero_point(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    def row(V: float) -> List[float]:
        return [V, zero_point_energy(V), zero_point_energy_integral(V)]

    headers = ["V", "E0_gamma", "E0_gamma_integral"]
    return headers, _sweep_rows(["V"], _single_sweep(config.parameters, "V"), row)


def _ratio(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    def row(V: float) -> List[float]:
        return [V, zero_point_to_self_energy_ratio(V, scale)]

    return ["V", "ratio"], _sweep_rows(["V"], _single_sweep(config.parameters, "V"), row)


def _state_count(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    def row(V: float) -> List[float]:
        return [V, state_count(V), zero_point_energy(V), zero_point_per_state()]

    headers = ["V", "N", "E0_gamma", "E0_per_state"]
    return headers, _sweep_rows(["V"], _single_sweep(config.parameters, "V"), row)


def _spectrum(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    p = config.parameters
    headers = ["p", "mean_energy", "occupancy", "bose_mean_energy"]
    return headers, _sweep_rows(["p"], _single_sweep(p, "p"), lambda x: spectral_row(x, p["T"], p["mu"]))


def _eos_sweep(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    p = config.parameters
    V, g_s, derivatives = p["V"], p["g_s"], p["derivatives"]
    headers = ["T", "mu", "V", "g_s", "F", "U", "N", "S", "P", "F_ref", "U_ref", "N_ref"]
    if derivatives:
        headers.extend(["minus_dF_dmu", "minus_dF_dT"])

    def row(T: float, mu: float) -> List[float]:
        point = ThermoPoint(T, mu, V, g_s)
        values = [T, mu, V, g_s, *state_functions(point), *classical_limits(point)]
        if derivatives:
            values.extend(numeric_derivatives(point))
        return values

    grid = list(product(sweep_values(p["T"]), sweep_values(p["mu"])))
    return headers, _sweep_rows(["T", "mu"], grid, row)


def build_trajectory(record: Dict[str, Any]) -> Trajectory:
    """Trajectory from a validated config record."""
    kind = TrajectoryKind(record["kind"])
    charge = record["charge"]
    if kind is TrajectoryKind.STATIC:
        return Trajectory.static(charge, record["center"])
    if kind is TrajectoryKind.CIRCULAR:
        return Trajectory.circular(charge, record["radius"], record["angular_frequency"], record["center"])
    if kind is TrajectoryKind.LINEAR_OSCILLATION:
        return Trajectory.linear_oscillation(
            charge, record["amplitude"], record["angular_frequency"], record["center"]
        )
    return Trajectory.custom_sampled(charge, record["times"], record["positions"])


def build_mode_set(parameters: Dict[str, Any], seed: int) -> ModeSet:
    """Explicit modes first, then each isotropic shell seeded with seed + its index."""
    modes = [Mode(tuple(m["k"]), m["theta"]) for m in parameters["modes"]]
    for index, shell in enumerate(parameters["shells"]):
        modes.extend(isotropic_shell(shell["k"], shell["count"], (seed + index) % MAX_SEED))
    return ModeSet(tuple(modes), parameters["volume"])


def _modes(config: RunConfig, scale: PlanckScale) -> Tuple[List[str], Rows]:
    p = config.parameters
    mode_set = build_mode_set(p, config.seed)
    trajectories = [build_trajectory(record) for record in p["trajectories"]]
    initial = None
    if p["initial"] == "constrained":
        initial = constrained_initial_state(mode_set, trajectories)
    history = integrate(mode_set, trajectories, p["dt"], p["n_steps"], initial, p["sample_every"])
    logger.info(f"Max Lorenz residual {history.max_residual():.3g}, max amplitude {history.max_amplitude():.3g}")
    return list(HISTORY_COLUMNS), history.to_rows()


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig, PlanckScale], Tuple[List[str], Rows]]] = {
    "coulomb": _coulomb,
    "kernel-sweep": _kernel_sweep,
    "self-energy": _self_energy,
    "zero-point": _zero_point,
    "ratio": _ratio,
    "state-count": _state_count,
    "spectrum": _spectrum,
    "eos-sweep": _eos_sweep,
    "modes": _modes,
}


# ==================== Run ====================

def run(config: RunConfig) -> RunResult:
    """Compute the table for a validated config and write it out.

    The table goes to config.output["path"], or to stdout when the path is
    None. The resolved config is echoed into the table metadata.

    Returns:
        RunResult with status EXIT_OK, or EXIT_NUMERIC_ERROR and a diagnostic
        naming the failing row
    """
    logger.info(f"Running {config.command}")
    handler = COMMAND_HANDLERS[config.command]
    try:
        headers, rows = handler(config, make_scale(config.alpha))
    except SweepRowError as e:
        message = f"{config.command} failed at {e}"
        logger.error(message, exc_info=True)
        return RunResult(None, EXIT_NUMERIC_ERROR, message)
    except NUMERIC_ERRORS as e:
        message = f"{config.command} failed: {e}"
        logger.error(message, exc_info=True)
        return RunResult(None, EXIT_NUMERIC_ERROR, message)

    table = SweepTable(headers, metadata=build_metadata(config.command, config.to_dict(), config.seed))
    table.extend(rows)
    text = table.write(config.output["path"], config.output["format"])
    if config.output["path"] is None:
        sys.stdout.write(text)
    logger.info(f"{config.command} finished with {len(rows)} rows")
    return RunResult(table, EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Momentum-cutoff electrodynamics calculator: tables from a JSON run config."
    )
    parser.add_argument("--config", required=True, help="Path to the JSON run configuration")
    parser.add_argument("--output", help="Output file (overrides output.path)")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, help="Output format (overrides output.format)")
    parser.add_argument("--seed", type=int, help="64-bit seed (overrides seed)")
    parser.add_argument("--alpha", type=float, help="Fine-structure constant (overrides alpha)")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {TOOL_VERSION}")
    return parser


def apply_overrides(document: Any, args: argparse.Namespace) -> Any:
    """Fold command-line overrides into a parsed config document."""
    if not isinstance(document, dict):
        return document
    document = dict(document)
    if args.seed is not None:
        document["seed"] = args.seed
    if args.alpha is not None:
        document["alpha"] = args.alpha
    if args.output is not None or args.format is not None:
        output = document.get("output", {})
        if isinstance(output, dict):
            output = dict(output)
            if args.output is not None:
                output["path"] = args.output
            if args.format is not None:
                output["format"] = args.format
            document["output"] = output
    return document


def load_config(args: argparse.Namespace) -> RunConfig:
    """Read, override and validate the run configuration named by --config.

    Raises:
        ConfigError for unreadable files and invalid documents
    """
    try:
        with open(args.config, "rb") as f:
            raw = f.read()
    except OSError as e:
        raise ConfigError([f"cannot read config {args.config}: {e.strerror}"])
    return validate_document(apply_overrides(parse_document(raw), args))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse flags, validate the config and run it.

    Returns:
        Exit status: 0 on success, 2 for config errors, 3 for numeric failures
    """
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ConfigError as e:
        for error in e.errors:
            logger.error(f"Config error: {error}")
        return EXIT_CONFIG_ERROR
    return run(config).status
