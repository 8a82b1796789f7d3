"""Tests for vcmod.sim.analytic."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.stats import norm

from vcmod.exceptions import ConfigError
from vcmod.results import BerRecord
from vcmod.sim import (
    BER_TARGET,
    gray_pam_bit_errors,
    gray_qam_ber,
    record_threshold,
    threshold_crossing,
    threshold_gap,
)


def _curve(name: str, snr: list[float], ber: list[float]) -> list[BerRecord]:
    return [
        BerRecord(name, s, 10**6, round(b * 10**6), b, b)
        for s, b in zip(snr, ber, strict=True)
    ]


class TestGrayPam:
    """Tests for gray_pam_bit_errors and gray_qam_ber."""

    def test_two_levels(self):
        """Tests Q(1/(2σ)) for binary PAM."""
        errors = gray_pam_bit_errors(2, 0.25)
        assert errors == pytest.approx([norm.sf(1.0)])

    def test_four_levels(self):
        """Tests both bits of Gray 4-PAM against their closed forms."""
        sigma = 0.4
        q = [norm.sf(k * 0.5 / sigma) for k in range(6)]
        msb = (q[1] + q[3]) / 2
        lsb = (2 * q[1] + q[3] - q[5]) / 2
        errors = gray_pam_bit_errors(4, sigma**2)
        assert errors == pytest.approx([msb, lsb])

    def test_qam_averages_dimensions(self):
        """Tests that square QAM has the BER of its PAM factor."""
        variance = 10.5 / 10 ** (1.8) / 2
        pam = gray_pam_bit_errors(8, variance).mean()
        assert gray_qam_ber((8, 8), 18.0) == pytest.approx(pam)

    def test_qam_falls_with_snr(self):
        """Tests that the 64-QAM BER decreases over the SNR range."""
        bers = [gray_qam_ber((8, 8), snr) for snr in (12.0, 15.0, 18.0, 21.0)]
        assert all(a > b for a, b in zip(bers, bers[1:], strict=False))
        assert 1e-3 < bers[3] < 1e-2

    def test_explicit_energy(self):
        """Tests that passing the grid energy matches the default."""
        assert gray_qam_ber((4, 4), 10.0, es=2.5) == pytest.approx(
            gray_qam_ber((4, 4), 10.0)
        )

    @pytest.mark.parametrize("size, variance", [(3, 1.0), (4, 0.0)])
    def test_invalid(self, size, variance):
        """Tests non-power-of-two sizes and zero variance."""
        with pytest.raises(ConfigError):
            gray_pam_bit_errors(size, variance)


class TestThresholds:
    """Tests for threshold_crossing, record_threshold and threshold_gap."""

    def test_log_linear_interpolation(self):
        """Tests interpolation of log10 BER between bracketing points."""
        snr = threshold_crossing([0.0, 1.0, 2.0], [1e-1, 1e-2, 1e-4], 1e-3)
        assert snr == pytest.approx(1.5)

    def test_exact_hit(self):
        """Tests a point lying exactly on the target."""
        assert threshold_crossing([0.0, 1.0], [1e-2, 1e-3], 1e-3) == pytest.approx(1.0)

    def test_zero_ber_points_ignored(self):
        """Tests that error-free points do not break the bracket."""
        snr = threshold_crossing([2.0, 0.0, 1.0], [1e-4, 1e-2, 0.0], 1e-3)
        assert snr == pytest.approx(1.0)

    def test_not_crossed(self):
        """Tests that a curve above the target gives None."""
        assert threshold_crossing([0.0, 1.0], [0.1, 0.05]) is None
        assert threshold_crossing([], []) is None

    def test_default_target(self):
        """Tests the 1.81e-3 target."""
        assert BER_TARGET == 1.81e-3
        snr = threshold_crossing([0.0, 1.0], [1e-2, 1e-4])
        expected = (math.log10(1.81e-3) + 2) / -2
        assert snr == pytest.approx(expected)

    def test_gap(self):
        """Tests that a curve reaching the target earlier has a positive gain."""
        reference = _curve("ref", [10.0, 11.0], [1e-2, 1e-4])
        candidate = _curve("new", [9.5, 10.5], [1e-2, 1e-4])
        assert record_threshold(reference) is not None
        assert threshold_gap(reference, candidate) == pytest.approx(0.5)
        assert threshold_gap(reference, _curve("flat", [10.0], [0.2])) is None
