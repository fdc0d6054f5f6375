"""Tests for the Planck scale and SI display conversion."""

import math

import pytest
from scipy.constants import physical_constants

from config import DEFAULT_ALPHA, DisplayKind
from exceptions import DomainError
from units import PlanckScale, from_display, make_scale, to_display


class TestPlanckScale:

    def test_default_alpha(self):
        scale = make_scale()
        assert scale.alpha == DEFAULT_ALPHA
        assert scale.e_squared == DEFAULT_ALPHA

    def test_internal_units_are_one(self):
        scale = make_scale()
        assert (scale.energy_star, scale.length_star, scale.momentum_star) == (1.0, 1.0, 1.0)
        # P* L* = hbar in internal units
        assert scale.momentum_star * scale.length_star == 1.0

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1, 2.0, math.nan, math.inf])
    def test_alpha_out_of_range(self, alpha):
        with pytest.raises(DomainError, match="alpha"):
            make_scale(alpha)

    def test_internal_units_cannot_change(self):
        with pytest.raises(DomainError):
            PlanckScale(length_star=2.0)

    def test_ratio_prefactor_for_alpha_1_over_137(self):
        scale = make_scale(1 / 137)
        assert 1 / (16 * math.pi * scale.alpha) == pytest.approx(137 / (16 * math.pi))
        assert 137 / (16 * math.pi) == pytest.approx(2.73, abs=0.01)

    def test_self_energy_prefactor(self):
        assert make_scale().alpha / math.pi == pytest.approx(2.3228195e-3, rel=1e-7)


class TestDisplay:

    def test_planck_mass_in_grams(self):
        value = to_display(1.0, "mass")
        assert value.value == pytest.approx(2.18e-5)
        assert value.unit == "g"

    def test_zero_energy(self):
        assert to_display(0.0, DisplayKind.ENERGY).value == 0.0

    def test_length_uses_codata(self):
        planck_length = physical_constants["Planck length"][0]
        value = to_display(2.0, "length")
        assert value.value == pytest.approx(2.0 * planck_length, rel=1e-12)
        assert value.unit == "m"

    def test_energy_is_mass_times_c_squared(self):
        c = physical_constants["speed of light in vacuum"][0]
        assert to_display(1.0, "energy").value == pytest.approx(2.18e-8 * c**2, rel=1e-12)

    @pytest.mark.parametrize("kind", list(DisplayKind))
    @pytest.mark.parametrize("value", [1e-30, 0.37, 1.0, 12345.678, 1e20])
    def test_round_trip(self, kind, value):
        back = from_display(to_display(value, kind).value, kind)
        assert back == pytest.approx(value, rel=1e-12)

    def test_unknown_kind(self):
        with pytest.raises(DomainError, match="Unknown kind"):
            to_display(1.0, "charge")
