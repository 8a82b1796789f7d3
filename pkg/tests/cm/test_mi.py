"""Tests for vcmod.cm.mi."""

from __future__ import annotations

import numpy as np
import pytest

from vcmod.cm import mi_bit_levels, mi_blocks
from vcmod.exceptions import ConfigError, UnsupportedError
from vcmod.labeling import build_labeling
from vcmod.vc import build_constellation


@pytest.fixture
def qam16():
    """16-QAM."""
    return build_constellation("16-QAM")


class TestMiBlocks:
    """Tests for mi_blocks."""

    def test_bicm(self, qam16):
        """Tests one unconditioned block per bit."""
        blocks = mi_blocks(build_labeling(qam16, "gray"), "bicm")
        assert blocks == [((0,), ()), ((1,), ()), ((2,), ()), ((3,), ())]

    def test_chain(self, qam16):
        """Tests bit-by-bit conditioning on all earlier bits."""
        blocks = mi_blocks(build_labeling(qam16, "gray"), "chain")
        assert blocks[2] == ((2,), (0, 1))

    def test_mlcm_sp(self, qam16):
        """Tests coded levels followed by one uncoded block."""
        labeling = build_labeling(qam16, "sp", "checkerboard-n2")
        assert mi_blocks(labeling, "mlcm") == [
            ((0,), ()),
            ((1,), (0,)),
            ((2, 3), (0, 1)),
        ]

    def test_unknown_scheme(self, qam16):
        """Tests that an unknown scheme raises ConfigError."""
        with pytest.raises(ConfigError, match="Unknown MI scheme"):
            mi_blocks(build_labeling(qam16, "gray"), "joint")


class TestMiBitLevels:
    """Tests for mi_bit_levels."""

    def test_high_snr_saturates(self, qam16):
        """Tests that every bit carries one bit at 30 dB."""
        result = mi_bit_levels(
            qam16, build_labeling(qam16, "gray"), 30.0, "bicm", samples=2000
        )
        assert len(result.levels) == 4
        for level in result.levels:
            assert level.mi == pytest.approx(1.0, abs=1e-3)
        assert result.full_mi == pytest.approx(4.0, abs=1e-3)

    def test_low_snr_vanishes(self, qam16):
        """Tests that little information passes at -20 dB."""
        result = mi_bit_levels(
            qam16, build_labeling(qam16, "gray"), -20.0, "bicm", samples=4000
        )
        assert result.full_mi < 0.1

    @pytest.mark.parametrize("scheme", ["chain", "mlcm"])
    def test_chain_rule_sums_to_full(self, qam16, scheme):
        """Tests that chain-rule levels add up to I(Y;X) sample by sample."""
        labeling = build_labeling(qam16, "sp", "checkerboard-n2")
        result = mi_bit_levels(qam16, labeling, 8.0, scheme, samples=3000)
        total = sum(level.mi for level in result.levels)
        assert total == pytest.approx(result.full_mi, abs=1e-9)

    def test_seeded_generator(self, qam16):
        """Tests that equal generators give equal estimates."""
        labeling = build_labeling(qam16, "gray")
        a = mi_bit_levels(
            qam16, labeling, 5.0, samples=500, rng=np.random.default_rng(9)
        )
        b = mi_bit_levels(
            qam16, labeling, 5.0, samples=500, rng=np.random.default_rng(9)
        )
        assert a.full_mi == b.full_mi
        assert a.samples == 500

    def test_too_many_points(self):
        """Tests that E8-24 is refused."""
        c = build_constellation("E8-24")
        with pytest.raises(UnsupportedError, match="limited to 65536 points"):
            mi_bit_levels(c, build_labeling(c, "gray"), 10.0)
