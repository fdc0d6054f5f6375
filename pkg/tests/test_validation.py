"""Tests for run-configuration validation."""

import json

import pytest

from config import DEFAULT_ALPHA, DEFAULT_SEED
from exceptions import ConfigError
from validation import RunConfig, sweep_values, validate, validate_document


def errors_of(document) -> list:
    with pytest.raises(ConfigError) as excinfo:
        validate(json.dumps(document).encode())
    return excinfo.value.errors


class TestTopLevel:

    @pytest.mark.parametrize("text", [b"", b"   \n", b"{}"])
    def test_empty_document(self, text):
        with pytest.raises(ConfigError) as excinfo:
            validate(text)
        assert excinfo.value.errors == ["command missing"]

    def test_minimal_ratio_config(self):
        config = validate(b'{"command": "ratio"}')
        assert isinstance(config, RunConfig)
        assert config.alpha == DEFAULT_ALPHA
        assert config.seed == DEFAULT_SEED
        assert config.parameters == {"V": 1.0}
        assert config.output == {"path": None, "format": "csv"}

    def test_invalid_json(self):
        with pytest.raises(ConfigError, match="invalid JSON"):
            validate(b'{"command": ')

    def test_not_an_object(self):
        assert errors_of([1, 2]) == ["config must be a JSON object"]

    def test_unknown_command(self):
        errors = errors_of({"command": "plot"})
        assert len(errors) == 1
        assert errors[0].startswith("command: must satisfy one of coulomb")

    def test_unknown_keys_rejected(self):
        errors = errors_of({"command": "ratio", "verbose": True, "parameters": {"V": 1, "W": 2}})
        assert "verbose: unknown key" in errors
        assert "parameters.W: unknown key" in errors

    @pytest.mark.parametrize("alpha", [0, 1, -0.5, "1/137"])
    def test_alpha_range(self, alpha):
        errors = errors_of({"command": "ratio", "alpha": alpha})
        assert len(errors) == 1 and errors[0].startswith("alpha:")

    @pytest.mark.parametrize("seed", [-1, 2**64, 1.5, True])
    def test_seed_range(self, seed):
        errors = errors_of({"command": "ratio", "seed": seed})
        assert len(errors) == 1 and errors[0].startswith("seed:")

    def test_output_block(self):
        config = validate(b'{"command": "ratio", "output": {"path": "out.json", "format": "json"}}')
        assert config.output == {"path": "out.json", "format": "json"}
        errors = errors_of({"command": "ratio", "output": {"format": "xlsx", "path": 3}})
        assert len(errors) == 2

    def test_all_errors_collected(self):
        errors = errors_of({
            "command": "eos-sweep",
            "alpha": 5,
            "parameters": {"T": -1.0, "mu": 0.5, "g_s": 3, "extra": 1},
        })
        assert len(errors) == 5


class TestParameters:

    def test_negative_temperature_names_field_and_constraint(self):
        errors = errors_of({"command": "eos-sweep", "parameters": {"T": -1.0}})
        assert errors == ["parameters.T: must satisfy > 0, got -1.0"]

    def test_required_parameter_missing(self):
        assert errors_of({"command": "spectrum"}) == ["parameters.T: required key missing"]

    def test_zero_count_range(self):
        errors = errors_of({
            "command": "kernel-sweep",
            "parameters": {"r": {"min": 1e-3, "max": 1e3, "count": 0, "scale": "log"}},
        })
        assert errors == ["parameters.r.count: must satisfy >= 1, got 0"]

    def test_reversed_range(self):
        errors = errors_of({"command": "ratio", "parameters": {"V": {"min": 2, "max": 1, "count": 3}}})
        assert errors == ["parameters.V: must satisfy min <= max, got [2.0, 1.0]"]

    def test_log_range_needs_positive_minimum(self):
        errors = errors_of({"command": "zero-point", "parameters": {"V": {"min": 0, "max": 1, "count": 3, "scale": "log"}}})
        assert errors == ["parameters.V.min: must satisfy > 0 for log scale, got 0.0"]

    def test_oracle_needs_positive_separation(self):
        errors = errors_of({"command": "kernel-sweep", "parameters": {"r": 0, "oracle": "quadrature"}})
        assert errors == ["parameters.r: must satisfy > 0 when an oracle is requested, got 0.0"]

    def test_spectrum_range_through_zero_momentum_needs_negative_mu(self):
        document = {"command": "spectrum", "parameters": {"p": {"min": 0, "max": 1, "count": 5}, "T": 0.1}}
        assert errors_of(document) == ["parameters.p: must satisfy > 0 when mu = 0, got 0.0"]
        document["parameters"]["mu"] = -0.1
        assert validate(json.dumps(document)).parameters["mu"] == -0.1

    def test_range_scale_default_filled(self):
        config = validate(b'{"command": "self-energy", "parameters": {"e": {"min": -1, "max": 1, "count": 3}}}')
        assert config.parameters["e"] == {"min": -1.0, "max": 1.0, "count": 3, "scale": "linear"}

    def test_coulomb_charges(self):
        config = validate(json.dumps({
            "command": "coulomb",
            "parameters": {"charges": [{"e": 1, "r": [0, 0, 0]}, {"e": -1, "r": [1, 0, 0]}]},
        }))
        assert config.parameters["charges"][1] == {"e": -1.0, "r": [1.0, 0.0, 0.0]}
        assert config.parameters["include_self"] is True

    def test_coulomb_bad_charge(self):
        errors = errors_of({"command": "coulomb", "parameters": {"charges": [{"e": 1, "r": [0, 0]}, {"r": [0, 0, 0]}]}})
        assert errors == [
            "parameters.charges[0].r: must satisfy 3 components, got [0, 0]",
            "parameters.charges[1].e: required key missing",
        ]

    def test_modes_need_at_least_one_mode(self):
        errors = errors_of({"command": "modes", "parameters": {"dt": 0.01, "n_steps": 10}})
        assert len(errors) == 1 and "at least one entry in modes or shells" in errors[0]

    def test_modes_full_config(self):
        config = validate(json.dumps({
            "command": "modes",
            "parameters": {
                "modes": [{"k": [1, 0, 0]}],
                "shells": [{"k": 0.5, "count": 4}],
                "trajectories": [
                    {"kind": "circular", "charge": 1, "radius": 0.3, "angular_frequency": 1},
                    {"kind": "custom-sampled", "charge": -1, "times": [0, 1], "positions": [[0, 0, 0], [0.1, 0, 0]]},
                ],
                "dt": 0.01,
                "n_steps": 100,
            },
        }))
        p = config.parameters
        assert p["modes"] == [{"k": [1.0, 0.0, 0.0], "theta": 0.0}]
        assert p["trajectories"][0]["center"] == [0.0, 0.0, 0.0]
        assert p["initial"] == "constrained"
        assert p["sample_every"] == 1

    def test_trajectory_errors(self):
        errors = errors_of({
            "command": "modes",
            "parameters": {
                "modes": [{"k": [0, 0, 0]}],
                "trajectories": [
                    {"kind": "spiral", "charge": 1},
                    {"kind": "circular", "charge": 1, "amplitude": [1, 0, 0], "angular_frequency": 1},
                    {"kind": "custom-sampled", "charge": 1, "times": [1, 0], "positions": [[0, 0, 0], [0, 0, 0]]},
                ],
                "dt": 0.01,
                "n_steps": 10,
            },
        })
        assert errors == [
            "parameters.modes[0].k: must satisfy nonzero vector, got [0, 0, 0]",
            "parameters.trajectories[0].kind: must satisfy one of static, circular, linear-oscillation, "
            "custom-sampled, got 'spiral'",
            "parameters.trajectories[1].amplitude: unknown key",
            "parameters.trajectories[1].radius: required key missing",
            "parameters.trajectories[2].times: must satisfy at least 2 strictly increasing samples, got [1.0, 0.0]",
        ]


class TestRoundTrip:

    @pytest.mark.parametrize("document", [
        {"command": "ratio"},
        {"command": "eos-sweep", "parameters": {"T": {"min": 0.01, "max": 1, "count": 4, "scale": "log"}, "mu": -0.1}},
        {"command": "kernel-sweep", "parameters": {"r": {"min": 1e-3, "max": 1e3, "count": 7, "scale": "log"}, "oracle": "mc"}},
        {"command": "coulomb", "parameters": {"charges": [{"e": 1, "r": [0, 0, 0]}]}, "seed": 7, "alpha": 0.01},
        {"command": "modes", "parameters": {"shells": [{"k": 1, "count": 2}], "dt": 0.01, "n_steps": 3,
                                            "trajectories": [{"kind": "static", "charge": 1}]}},
    ])
    def test_resolved_config_revalidates_to_itself(self, document):
        config = validate_document(document)
        assert validate(json.dumps(config.to_dict())) == config


class TestSweepValues:

    def test_single_value(self):
        assert sweep_values(2.5) == [2.5]

    def test_linear(self):
        assert sweep_values({"min": 0.0, "max": 1.0, "count": 5, "scale": "linear"}) == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_log(self):
        values = sweep_values({"min": 1e-3, "max": 1e3, "count": 7, "scale": "log"})
        assert values == pytest.approx([1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3], rel=1e-12)
        assert values[0] == 1e-3 and values[-1] == 1e3

    def test_single_count(self):
        assert sweep_values({"min": 3.0, "max": 4.0, "count": 1, "scale": "log"}) == [3.0]
