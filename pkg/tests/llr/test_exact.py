"""Tests for vcmod.llr.exact and vcmod.llr.frame."""

from __future__ import annotations

import numpy as np
import pytest

from vcmod.exceptions import ConfigError, UnsupportedError
from vcmod.labeling import GrayLabeling, build_labeling, unpack_bits
from vcmod.llr import (
    LLR_CLAMP,
    bicm_ball_llr,
    exact_maxlog_llr,
    mlcm_hybrid_llr,
    mlcm_sp_llr,
    qam_exact_llr,
    read_llr_frames,
    read_table,
    write_llr_frames,
)
from vcmod.vc import build_constellation


class TestExactMaxlog:
    """Tests for exact_maxlog_llr."""

    def test_separable_qam_matches_full_search(self):
        """Tests that per-dimension Gray LLRs equal the exhaustive search."""
        qam = build_constellation("16-QAM")
        y = np.random.default_rng(1).normal(scale=2.0, size=(50, 2))
        full = exact_maxlog_llr(qam, GrayLabeling(qam.h), y, 0.7)
        fast = qam_exact_llr(qam.h, y, 0.7)
        np.testing.assert_allclose(full.values, fast.values)

    def test_tdhq_line_sizes(self):
        """Tests that unequal PAM sizes give Σ log₂ h_i LLRs per symbol."""
        frame = qam_exact_llr(np.array([4, 4, 4, 2]), np.zeros((3, 4)), 1.0)
        assert frame.values.shape == (3, 7)
        assert frame.width == 7

    @pytest.mark.parametrize("kind", ["gray", "sp", "hybrid"])
    def test_hard_decisions_at_the_points(self, kind):
        """Tests that noiseless points give their own label as hard bits."""
        vc = build_constellation("example-1")
        labeling = build_labeling(vc, kind)
        bits = unpack_bits(np.arange(vc.M), vc.m)
        x = vc.encode(labeling.map(bits))
        frame = exact_maxlog_llr(vc, labeling, x, 0.5)
        assert np.array_equal(frame.hard_bits(), bits)

    def test_pam_values(self):
        """Tests the closed-form LLRs of 4-PAM with offset 1.5."""
        # Points -1.5, -0.5, 0.5, 1.5 carry Gray labels 00, 01, 11, 10.
        frame = qam_exact_llr(np.array([4]), np.array([[-1.5]]), 1.0)
        assert frame.values[0].tolist() == pytest.approx([4.0, 1.0])

    def test_known_bits_saturate(self):
        """Tests that known leading bits remove the other subset."""
        qam = build_constellation("16-QAM")
        labeling = GrayLabeling(qam.h)
        bits = np.array([[1, 0, 0, 1]])
        x = qam.encode(labeling.map(bits))
        frame = exact_maxlog_llr(qam, labeling, x, 1.0, given=bits[:, :2])
        assert frame.values[0, :2].tolist() == [-LLR_CLAMP, LLR_CLAMP]

    def test_large_constellation_refused(self):
        """Tests that E8-24 is too large for the exhaustive search."""
        vc = build_constellation("E8-24")
        with pytest.raises(UnsupportedError, match="limited"):
            exact_maxlog_llr(vc, GrayLabeling(vc.h), np.zeros((1, 8)), 1.0)

    def test_non_positive_sigma2(self):
        """Tests that σ² = 0 raises ConfigError."""
        with pytest.raises(ConfigError, match="positive"):
            qam_exact_llr(np.array([4]), np.zeros((1, 1)), 0.0)


class TestNoiseScaling:
    """Tests that every LLR engine scales as 1/σ²."""

    ENGINES = {
        "exact": lambda vc, y, s2: exact_maxlog_llr(
            vc, build_labeling(vc, "gray"), y, s2
        ),
        "ball": lambda vc, y, s2: bicm_ball_llr(vc, y, s2),
        "sp": lambda vc, y, s2: mlcm_sp_llr(
            vc, build_labeling(vc, "sp", "table-I-n2"), 0, y, s2
        ),
        "hybrid": lambda vc, y, s2: mlcm_hybrid_llr(
            vc, build_labeling(vc, "hybrid"), 0, y, s2
        ),
    }

    @pytest.mark.parametrize("engine", sorted(ENGINES))
    def test_llr_times_sigma2_is_invariant(self, engine):
        """Tests that σ²·LLR does not depend on σ²."""
        vc = build_constellation("example-1")
        y = np.random.default_rng(8).uniform(-3.0, 3.0, size=(200, 2))
        run = self.ENGINES[engine]
        low = run(vc, y, 0.5).values * 0.5
        high = run(vc, y, 2.0).values * 2.0
        np.testing.assert_allclose(low, high, rtol=1e-12, atol=1e-9)


class TestLlrDump:
    """Tests for the LLR text format."""

    def test_write_then_read(self, tmp_path):
        """Tests that dumps keep 6 decimals and one symbol per line."""
        path = tmp_path / "out" / "frame.llr"
        write_llr_frames(path, np.array([[1.5, -2.0], [0.1234567, 3.0]]))
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines == ["1.500000 -2.000000", "0.123457 3.000000"]
        assert read_llr_frames(path).shape == (2, 2)

    def test_single_frame_is_one_row(self, tmp_path):
        """Tests that a 1-D array is written as one line."""
        path = tmp_path / "one.llr"
        write_llr_frames(path, np.array([1.0, 2.0, 3.0]))
        assert read_llr_frames(path).shape == (1, 3)

    def test_missing_file(self, tmp_path):
        """Tests that a missing dump raises ConfigError."""
        with pytest.raises(ConfigError, match="not found"):
            read_llr_frames(tmp_path / "none.llr")

    def test_ragged_table(self, tmp_path):
        """Tests that rows of unequal length raise ConfigError."""
        path = tmp_path / "ragged.txt"
        path.write_text("1 2\n3\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="Malformed"):
            read_table(path, "received symbols")
