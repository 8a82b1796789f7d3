"""Tests for vcmod.sim.channel."""

from __future__ import annotations

import numpy as np
import pytest

from vcmod.exceptions import ConfigError
from vcmod.sim import (
    ChannelConfig,
    awgn,
    sigma2_per_2d,
    sigma2_total,
    snr_db_of,
    snr_grid,
    snr_streams,
)


class TestNoiseBookkeeping:
    """Tests for the SNR and variance conversions."""

    def test_sigma2_total(self):
        """Tests Es/σ²_tot at 10 dB."""
        assert sigma2_total(10.0, 10.0) == pytest.approx(1.0)

    def test_round_trip(self):
        """Tests that snr_db_of inverts sigma2_total."""
        assert snr_db_of(10.5, sigma2_total(10.5, 17.3)) == pytest.approx(17.3)

    def test_per_two_dimensions(self):
        """Tests σ² = 2σ²_tot/n."""
        assert sigma2_per_2d(1.0, 8) == pytest.approx(0.25)
        assert sigma2_per_2d(3.0, 2) == pytest.approx(3.0)

    def test_non_positive_energy(self):
        """Tests that zero energy raises ConfigError."""
        with pytest.raises(ConfigError, match="energy must be positive"):
            sigma2_total(0.0, 10.0)

    def test_non_positive_variance(self):
        """Tests that a zero variance has no SNR."""
        with pytest.raises(ConfigError, match="variance must be positive"):
            snr_db_of(1.0, 0.0)


class TestAwgn:
    """Tests for awgn."""

    def test_per_dimension_variance(self, rng):
        """Tests that each dimension carries σ²_tot/n."""
        y = awgn(np.zeros((50_000, 8)), 4.0, rng)
        assert y.var() == pytest.approx(0.5, rel=0.03)
        assert abs(y.mean()) < 0.02

    def test_zero_noise_copies(self, rng):
        """Tests that σ²_tot = 0 returns an unchanged copy."""
        x = np.ones((3, 2))
        y = awgn(x, 0.0, rng)
        np.testing.assert_array_equal(y, x)
        assert y is not x

    def test_negative_variance(self, rng):
        """Tests that a negative variance raises ConfigError."""
        with pytest.raises(ConfigError, match="non-negative"):
            awgn(np.zeros((1, 2)), -1.0, rng)


class TestSnrGrid:
    """Tests for snr_grid."""

    def test_range_includes_stop(self):
        """Tests the start/stop/step form."""
        grid = snr_grid({"start": 15.0, "stop": 17.0, "step": 0.25})
        assert len(grid) == 9
        assert grid[0] == 15.0
        assert grid[-1] == 17.0
        assert grid[1] == 15.25

    def test_scalar_and_list(self):
        """Tests scalar and list forms."""
        assert snr_grid(12) == (12.0,)
        assert snr_grid([1, 2.5]) == (1.0, 2.5)

    @pytest.mark.parametrize(
        "spec, message",
        [
            ({"start": 5, "stop": 1}, "stop >= start"),
            ({"start": 1, "stop": 5, "step": 0}, "step > 0"),
            ({"start": "a", "stop": 5}, "numeric"),
            ({"stop": 5}, "numeric"),
            (["x"], "must hold numbers"),
            ([], "empty"),
        ],
    )
    def test_invalid(self, spec, message):
        """Tests malformed grids."""
        with pytest.raises(ConfigError, match=message):
            snr_grid(spec)


class TestStreams:
    """Tests for snr_streams and ChannelConfig."""

    def test_streams_are_reproducible(self):
        """Tests that a seed always spawns the same streams."""
        a = [g.random() for g in snr_streams(7, 3)]
        b = [g.random() for g in snr_streams(7, 3)]
        assert a == b
        assert len(set(a)) == 3

    def test_streams_do_not_depend_on_count(self):
        """Tests that adding points leaves earlier streams unchanged."""
        short = snr_streams(7, 2)[1].random()
        long = snr_streams(7, 5)[1].random()
        assert short == long

    def test_channel_config(self):
        """Tests grid expansion and per-point noise."""
        channel = ChannelConfig.from_config({"start": 0, "stop": 10, "step": 10}, 4)
        assert channel.snr_db == (0.0, 10.0)
        assert channel.seed == 4
        assert len(channel.streams()) == 2
        noise = channel.noise(es=10.0, n=8)
        assert noise[0] == pytest.approx((10.0, 2.5))
        assert noise[1] == pytest.approx((1.0, 0.25))
