"""Tests for the regularized Coulomb kernel and configuration energies."""

import math
import random

import numpy as np
import pytest
from scipy.spatial.transform import Rotation
from scipy.special import sici

from exceptions import DomainError
from models import Charge, ChargeConfig
from coulomb import (
    config_energy, config_energy_estar, coulomb_limit_energy, kernel, self_energy,
)
from units import make_scale

SI_1 = 0.946083070367183


def pair(e1, e2, r):
    return ChargeConfig((Charge(e1, (0.0, 0.0, 0.0)), Charge(e2, (r, 0.0, 0.0))))


class TestKernel:

    def test_value_at_origin(self):
        assert kernel(0.0) == pytest.approx(2 / math.pi, abs=1e-12)

    def test_value_at_one(self):
        assert kernel(1.0) == pytest.approx(2 / math.pi * SI_1, abs=1e-14)
        assert kernel(1.0) == pytest.approx(0.6022952, abs=1e-7)

    @pytest.mark.parametrize("r", [1e2, 1e3, 1e4])
    def test_coulomb_limit(self, r):
        bound = 2 / (math.pi * r) * 1.1
        assert 1 - bound <= kernel(r) * r <= 1 + bound

    @pytest.mark.parametrize("r", [1e-8, 5e-5, 9.99e-5, 1e-4, 2e-4])
    def test_taylor_branch_is_continuous(self, r):
        assert kernel(r) == pytest.approx(2 / math.pi * sici(r)[0] / r, rel=1e-14)

    def test_positive_and_bounded(self):
        rng = random.Random(7)
        for _ in range(200):
            r = 10 ** rng.uniform(-6, 4)
            assert 0 < kernel(r) <= 2 / math.pi

    @pytest.mark.parametrize("r", [-1.0, math.nan, math.inf])
    def test_invalid_separation(self, r):
        with pytest.raises(DomainError):
            kernel(r)


class TestConfigEnergy:

    def test_single_unit_charge(self):
        config = ChargeConfig((Charge(1.0, (0.0, 0.0, 0.0)),))
        assert config_energy(config) == pytest.approx(1 / math.pi, abs=1e-12)

    def test_empty_config(self):
        assert config_energy(ChargeConfig()) == 0.0

    def test_like_charges_at_unit_separation(self):
        assert config_energy(pair(1.0, 1.0, 1.0), include_self=False) == pytest.approx(2 / math.pi * SI_1, abs=1e-14)

    def test_opposite_charges_recover_coulomb(self):
        r = 1e3
        energy = config_energy(pair(1.0, -1.0, r), include_self=False)
        assert energy == pytest.approx(-1 / r, rel=1e-3)

    def test_coincident_charges_are_finite(self):
        config = ChargeConfig((Charge(1.0, (0.5, 0.5, 0.5)), Charge(-1.0, (0.5, 0.5, 0.5))))
        assert config_energy(config) == pytest.approx(0.0, abs=1e-15)
        assert config_energy(config, include_self=False) == pytest.approx(-2 / math.pi)

    def test_permutation_invariant(self):
        rng = random.Random(11)
        charges = [
            Charge(rng.choice([-2.0, -1.0, 1.0, 0.5]), tuple(rng.uniform(-5, 5) for _ in range(3)))
            for _ in range(12)
        ]
        reference = config_energy(ChargeConfig(tuple(charges)))
        for _ in range(5):
            rng.shuffle(charges)
            assert config_energy(ChargeConfig(tuple(charges))) == reference

    def test_invariant_under_translation_and_rotation(self):
        rng = np.random.default_rng(4)
        positions = rng.uniform(-3, 3, size=(8, 3))
        values = rng.choice([-1.0, 1.0, 2.0], size=8)

        def energy(points):
            return config_energy(ChargeConfig(tuple(Charge(e, tuple(p)) for e, p in zip(values, points))))

        reference = energy(positions)
        assert energy(positions + [4.0, -7.5, 0.25]) == pytest.approx(reference, rel=1e-12)
        rotation = Rotation.from_euler("zyx", [0.3, -1.1, 2.4]).as_matrix()
        assert energy(positions @ rotation.T) == pytest.approx(reference, rel=1e-12)

    @pytest.mark.parametrize("scale", [-2.0, 0.5, 1.0, 3.0])
    def test_energy_is_quadratic_in_one_charge(self, scale):
        others = [Charge(1.0, (0.0, 0.0, 0.0)), Charge(-2.0, (1.5, 0.0, 0.0)), Charge(0.5, (0.0, 2.0, 1.0))]
        position, e_k = (0.3, -0.4, 0.8), 1.5

        def energy(e):
            return config_energy(ChargeConfig(tuple(others) + (Charge(e, position),)))

        linear = sum(e_k * c.e * kernel(math.dist(position, c.position)) for c in others)
        self_term = e_k**2 / math.pi
        expected = scale * linear + scale**2 * self_term
        assert energy(scale * e_k) - energy(0.0) == pytest.approx(expected, rel=1e-12, abs=1e-14)

    def test_estar_conversion_uses_alpha(self):
        config = pair(1.0, 1.0, 2.0)
        scale = make_scale(1 / 137)
        assert config_energy_estar(config, scale) == pytest.approx(config_energy(config) / 137, rel=1e-15)

    def test_from_records(self):
        config = ChargeConfig.from_records([{"e": 1, "r": [0, 0, 0]}, {"e": -1, "r": [1, 0, 0]}])
        assert len(config) == 2
        assert config.to_records() == [{"e": 1.0, "r": [0.0, 0.0, 0.0]}, {"e": -1.0, "r": [1.0, 0.0, 0.0]}]

    def test_rejects_non_finite_position(self):
        with pytest.raises(DomainError):
            ChargeConfig((Charge(1.0, (0.0, math.nan, 0.0)),))

    def test_rejects_wrong_dimension(self):
        with pytest.raises(DomainError):
            ChargeConfig((Charge(1.0, (0.0, 0.0)),))


class TestCoulombLimitEnergy:

    def test_matches_bare_coulomb(self):
        assert coulomb_limit_energy(pair(1.0, -1.0, 4.0)) == -0.25

    def test_approached_by_regularized_energy(self):
        config = pair(1.0, 1.0, 1e4)
        assert config_energy(config, include_self=False) == pytest.approx(coulomb_limit_energy(config), rel=1e-4)

    def test_diverges_for_coincident_charges(self):
        with pytest.raises(DomainError, match="coincident"):
            coulomb_limit_energy(pair(1.0, 1.0, 0.0))


class TestSelfEnergy:

    def test_unit_charge(self):
        alpha = 1 / 137.035999
        assert self_energy(1.0, make_scale(alpha)) == pytest.approx(alpha / math.pi, rel=1e-9)
        assert self_energy(1.0) == pytest.approx(2.3228195e-3, rel=1e-7)

    def test_zero_charge(self):
        assert self_energy(0.0) == 0.0

    def test_quadratic_in_charge(self):
        assert self_energy(2.0) == pytest.approx(4 * self_energy(1.0), rel=1e-15)

    def test_alpha_one(self):
        assert self_energy(1.0, make_scale(0.999999999)) == pytest.approx(1 / math.pi, rel=1e-8)

    def test_matches_config_energy_of_single_charge(self):
        config = ChargeConfig((Charge(1.0, (3.0, -1.0, 2.0)),))
        assert config_energy_estar(config) == pytest.approx(self_energy(1.0), rel=1e-12)
