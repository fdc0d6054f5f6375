"""Tests for the cutoff-modified photon gas."""

import math

import pytest
from scipy.special import zeta

from exceptions import DomainError
from models import ThermoPoint
from photongas import (
    _log_term, bose_mean_energy, classical_limits, free_energy, internal_energy,
    mean_energy, numeric_derivatives, occupancy, particle_number, spectral_row,
    state_functions,
)


def planck_reference(T: float):
    """F/V, U/V, N/V of the uncut Planck gas with two polarizations."""
    return -math.pi**2 * T**4 / 45, math.pi**2 * T**4 / 15, 2 * zeta(3) * T**3 / math.pi**2


# =============================================================================
# Spectral law
# =============================================================================

class TestSpectralLaw:

    def test_mid_momentum(self):
        assert mean_energy(0.5, 0.1) == pytest.approx(0.5 / (math.exp(5.0) - 0.5), rel=1e-14)

    @pytest.mark.parametrize("T", [0.05, 0.3, 1.0, 4.0])
    def test_cutoff_momentum(self, T):
        assert mean_energy(1.0, T) == pytest.approx(math.exp(-1.0 / T), rel=1e-14)

    def test_occupancy_at_cutoff(self):
        assert occupancy(1.0, 1.0) == pytest.approx(0.367879, abs=1e-6)

    @pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
    @pytest.mark.parametrize("T, mu", [(0.1, 0.0), (1.0, -0.3), (0.02, 0.0)])
    def test_mean_energy_is_momentum_times_occupancy(self, p, T, mu):
        assert mean_energy(p, T, mu) / p == pytest.approx(occupancy(p, T, mu), rel=1e-14)

    def test_zero_temperature_limit(self):
        assert occupancy(0.5, 1e-3) == pytest.approx(0.0, abs=1e-200)

    def test_occupancy_diverges_only_at_zero_momentum(self):
        assert occupancy(0.0, 0.5) == math.inf
        assert math.isfinite(occupancy(0.0, 0.5, mu=-0.1))
        assert math.isfinite(occupancy(1e-12, 0.5))

    def test_small_momentum_series_is_continuous(self):
        T = 1.0
        below, above = mean_energy(0.99e-6, T), mean_energy(1.01e-6, T)
        assert below == pytest.approx(above, rel=1e-6)
        assert mean_energy(0.0, T) == pytest.approx(T / (1 + T), rel=1e-12)

    @pytest.mark.parametrize("T", [0.01, 0.1, 1.0, 10.0])
    def test_never_exceeds_bose(self, T):
        for p in (1e-7, 1e-3, 0.1, 0.5, 0.9, 1.0):
            assert mean_energy(p, T) <= bose_mean_energy(p, T) * (1 + 1e-15)

    def test_bose_law(self):
        assert bose_mean_energy(0.5, 0.1) == pytest.approx(0.5 / math.expm1(5.0), rel=1e-14)
        assert bose_mean_energy(0.0, 0.7) == 0.7

    @pytest.mark.parametrize("p, T, mu", [(-0.1, 1.0, 0.0), (1.1, 1.0, 0.0), (0.5, 0.0, 0.0), (0.5, 1.0, 0.1)])
    def test_domain(self, p, T, mu):
        with pytest.raises(DomainError):
            mean_energy(p, T, mu)

    def test_spectral_row(self):
        assert spectral_row(0.5, 0.1) == [0.5, mean_energy(0.5, 0.1), occupancy(0.5, 0.1), bose_mean_energy(0.5, 0.1)]


# =============================================================================
# State functions
# =============================================================================

class TestThermoPoint:

    @pytest.mark.parametrize("kwargs", [
        {"T": 0.0}, {"T": -1.0}, {"T": 1.0, "mu": 0.1}, {"T": 1.0, "V": 0.0}, {"T": 1.0, "g_s": 3},
        {"T": math.nan},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            ThermoPoint(**kwargs)


class TestStateFunctions:

    def test_pressure_is_minus_free_energy_per_volume(self):
        point = ThermoPoint(0.2, V=1.0)
        result = state_functions(point)
        assert result.P * point.V == -result.F
        other = state_functions(ThermoPoint(0.2, V=3.0))
        assert other.P * 3.0 == pytest.approx(-other.F, rel=1e-15)

    def test_low_temperature_matches_planck_gas(self):
        T = 1e-3
        result = state_functions(ThermoPoint(T))
        F_ref, U_ref, N_ref = planck_reference(T)
        assert result.F == pytest.approx(F_ref, rel=1e-2)
        assert result.U == pytest.approx(U_ref, rel=1e-2)
        assert result.N == pytest.approx(N_ref, rel=1e-2)

    def test_classical_limits_closed_forms(self):
        T = 0.05
        F_ref, U_ref, N_ref = classical_limits(ThermoPoint(T, V=2.0))
        expected = planck_reference(T)
        assert F_ref == pytest.approx(2.0 * expected[0], rel=1e-14)
        assert U_ref == pytest.approx(2.0 * expected[1], rel=1e-14)
        assert N_ref == pytest.approx(2.0 * expected[2], rel=1e-14)

    def test_classical_limits_with_chemical_potential(self):
        T, mu = 0.1, -0.2
        F_ref, _, N_ref = classical_limits(ThermoPoint(T, mu, g_s=1))
        z = math.exp(mu / T)
        li4 = sum(z**k / k**4 for k in range(1, 200))
        li3 = sum(z**k / k**3 for k in range(1, 200))
        assert F_ref == pytest.approx(-T**4 * li4 / math.pi**2, rel=1e-13)
        assert N_ref == pytest.approx(T**3 * li3 / math.pi**2, rel=1e-13)

    def test_deviation_shrinks_as_temperature_drops(self):
        deviations = []
        for T in (1e-1, 1e-2, 1e-3):
            point = ThermoPoint(T)
            result = state_functions(point)
            references = classical_limits(point)
            deviations.append([
                abs(value / reference - 1)
                for value, reference in zip((result.F, result.U, result.N), references)
            ])
        for column in zip(*deviations):
            assert column[0] > column[1] > column[2]

    def test_free_energy_vanishes_as_temperature_drops(self):
        values = [free_energy(ThermoPoint(T)) for T in (1e-2, 1e-3, 1e-4)]
        assert all(v < 0 for v in values)
        assert abs(values[0]) > abs(values[1]) > abs(values[2])
        assert abs(values[2]) < 1e-16

    @pytest.mark.parametrize("T", [1e-4, 0.01, 1.0, 100.0])
    @pytest.mark.parametrize("mu", [0.0, -1.0])
    def test_finite_for_valid_points(self, T, mu):
        result = state_functions(ThermoPoint(T, mu))
        assert all(math.isfinite(value) for value in result)
        assert result.U >= 0 and result.N >= 0 and result.F <= 0

    def test_single_polarization_halves_everything(self):
        two = state_functions(ThermoPoint(0.3, g_s=2))
        one = state_functions(ThermoPoint(0.3, g_s=1))
        for a, b in zip(two, one):
            assert a == pytest.approx(2 * b, rel=1e-12)

    def test_near_cutoff_branch_is_continuous(self):
        for T, mu in ((0.1, 0.0), (1.0, -0.5), (10.0, 0.0)):
            below = _log_term(1 - 0.999e-4, T, mu)
            above = _log_term(1 - 1.001e-4, T, mu)
            assert below == pytest.approx(above, rel=1e-5)
            # p = 1 limit of ln(1 - (1-p)A)/(1-p) is -A
            assert _log_term(1.0, T, mu) == -math.exp(-(1 - mu) / T)


class TestThermodynamicIdentities:

    @pytest.mark.parametrize("T", [0.05, 0.1, 0.2, 0.5, 1.0])
    @pytest.mark.parametrize("mu", [0.0, -0.1, -0.5])
    def test_derivatives_match_mode_sums(self, T, mu):
        point = ThermoPoint(T, mu)
        result = state_functions(point)
        minus_dF_dmu, minus_dF_dT = numeric_derivatives(point)
        assert abs(minus_dF_dmu - result.N) <= max(1e-6, 1e-4 * abs(result.N))
        assert abs(minus_dF_dT - result.S) <= max(1e-6, 1e-4 * abs(result.S))

    def test_entropy_from_state_functions(self):
        point = ThermoPoint(0.4, -0.2, V=5.0)
        result = state_functions(point)
        assert result.S == pytest.approx((result.U - result.F - point.mu * result.N) / point.T)
        assert result.U == pytest.approx(internal_energy(point))
        assert result.N == pytest.approx(particle_number(point))
