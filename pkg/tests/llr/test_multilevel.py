"""Tests for vcmod.llr.multilevel."""

from __future__ import annotations

import numpy as np
import pytest

from vcmod.exceptions import ConfigError, LabelingError
from vcmod.labeling import build_labeling, unpack_bits
from vcmod.llr import mlcm_hybrid_llr, mlcm_sp_llr
from vcmod.vc import build_constellation, random_indices


@pytest.fixture
def example_vc():
    """The 32-point VC Z²/4D2."""
    return build_constellation("example-1")


class TestSetPartitionLlr:
    """Tests for mlcm_sp_llr."""

    def test_first_level_at_the_points(self, example_vc):
        """Tests ±1/σ² for the Z²/D2 bit at noiseless points."""
        sp = build_labeling(example_vc, "sp", "table-I-n2")
        bits = unpack_bits(np.arange(32), 5)
        x = example_vc.encode(sp.map(bits))
        frame = mlcm_sp_llr(example_vc, sp, 0, x, 0.5)
        expected = np.where(bits[:, :1] == 0, 2.0, -2.0)
        np.testing.assert_allclose(frame.values, expected)

    def test_second_level_given_the_first(self, example_vc):
        """Tests the D2/2Z2 bit when the first coset is known."""
        sp = build_labeling(example_vc, "sp", "table-I-n2")
        bits = unpack_bits(np.arange(32), 5)
        x = example_vc.encode(sp.map(bits))
        coset = sp.coset_sum(bits, levels=1)
        frame = mlcm_sp_llr(example_vc, sp, 1, x, 0.5, coset)
        # The other D2/2Z2 coset is at squared distance 2.
        expected = np.where(bits[:, 1:2] == 0, 4.0, -4.0)
        np.testing.assert_allclose(frame.values, expected)

    def test_eight_dimensional_chain(self):
        """Tests level widths and signs on Z8/D8/E8R8/2Z8 for E8-48."""
        vc = build_constellation("E8-48")
        sp = build_labeling(vc, "sp", "table-IV-n8")
        u = random_indices(vc, 50, np.random.default_rng(2))
        bits = sp.demap(u)
        x = vc.encode(u)
        coset = np.zeros((50, 8), dtype=np.int64)
        for level, width in enumerate(sp.level_widths):
            frame = mlcm_sp_llr(vc, sp, level, x, 1.0, coset)
            start = sp.level_offsets[level]
            assert frame.width == width
            assert np.array_equal(frame.hard_bits(), bits[:, start : start + width])
            coset = sp.coset_sum(bits, levels=level + 1)

    def test_level_out_of_range(self, example_vc):
        """Tests that level q raises LabelingError."""
        sp = build_labeling(example_vc, "sp", "table-I-n2")
        with pytest.raises(LabelingError, match="out of range"):
            mlcm_sp_llr(example_vc, sp, 2, np.zeros((1, 2)), 1.0)


class TestHybridLlr:
    """Tests for mlcm_hybrid_llr."""

    def test_unit_ball_at_the_points(self):
        """Tests ±1/σ² per parity bit of E8-24 at noiseless points."""
        vc = build_constellation("E8-24")
        hy = build_labeling(vc, "hybrid")
        u = random_indices(vc, 100, np.random.default_rng(4))
        bits = hy.demap(u)[:, :8]
        frame = mlcm_hybrid_llr(vc, hy, 0, vc.encode(u), 0.25)
        np.testing.assert_allclose(frame.values, np.where(bits == 0, 4.0, -4.0))
        assert frame.radius2 == 1

    def test_unit_ball_is_exact_per_dimension(self, example_vc):
        """Tests that R² = 1 gives the separable parity LLR."""
        hy = build_labeling(example_vc, "hybrid")
        y = np.array([[0.2, -0.3]])
        frame = mlcm_hybrid_llr(example_vc, hy, 0, y, 1.0)
        # y + a = (0.7, 0.2): parities 1 and 0 are nearest.
        assert frame.values[0].tolist() == pytest.approx([0.09 - 0.49, 0.64 - 0.04])

    def test_second_level_uses_scaled_ball(self, example_vc):
        """Tests level 2 of hybrid-p2 given the first-level coset."""
        hy = build_labeling(example_vc, "hybrid", "hybrid-p2")
        bits = unpack_bits(np.arange(32), 5)
        x = example_vc.encode(hy.map(bits))
        coset = hy.coset_sum(bits, levels=1)
        frame = mlcm_hybrid_llr(example_vc, hy, 1, x, 1.0, coset)
        # Members step by 2, so the competing digit is at squared distance 4.
        np.testing.assert_allclose(
            frame.values, np.where(bits[:, 2:4] == 0, 4.0, -4.0)
        )

    def test_qam_drops_members_outside_the_box(self):
        """Tests that a point far outside 16-QAM sees only empty subsets."""
        qam = build_constellation("16-QAM")
        hy = build_labeling(qam, "hybrid")
        frame = mlcm_hybrid_llr(qam, hy, 0, np.array([[-3.5, -1.5]]), 1.0)
        assert frame.values[0].tolist() == [0.0, 0.0]

    def test_zero_radius_rejected(self, example_vc):
        """Tests that the hybrid engine needs R² >= 1."""
        hy = build_labeling(example_vc, "hybrid")
        with pytest.raises(ConfigError, match="R² >= 1"):
            mlcm_hybrid_llr(example_vc, hy, 0, np.zeros((1, 2)), 1.0, radius2=0)


class TestHybridLlrFullCoset:
    """Tests mlcm_hybrid_llr at R² = 1 against minima over the whole coset."""

    @pytest.mark.parametrize("name", ["example-1", "D4-9", "E8-24"])
    def test_unit_ball_matches_full_coset(self, name):
        """Tests Zⁿ/2Zⁿ LLRs on 1000 random points."""
        vc = build_constellation(name)
        hy = build_labeling(vc, "hybrid")
        n, count, sigma2 = vc.n, 1000, 0.8
        y = np.random.default_rng(13).uniform(-6.0, 6.0, size=(count, n))
        got = mlcm_hybrid_llr(vc, hy, 0, y, sigma2).values

        # The nearest integer of either parity is within one step of the
        # rounding, so this window holds every coset minimum.
        grid = np.meshgrid(*[[-1, 0, 1]] * n, indexing="ij")
        window = np.stack(grid, axis=-1).reshape(-1, n)
        t = y + vc.offset
        expected = np.empty_like(got)
        for start in range(0, count, 50):
            rows = slice(start, start + 50)
            center = np.floor(t[rows] + 0.5).astype(np.int64)
            members = center[:, None, :] + window[None]
            zero = np.zeros((members.shape[0], 1, n), dtype=np.int64)
            is_one = hy.level_bits(0, members, zero).astype(bool)
            dist = np.sum((t[rows, None, :] - members) ** 2, axis=-1)[..., None]
            d0 = np.where(is_one, np.inf, dist).min(axis=1)
            d1 = np.where(is_one, dist, np.inf).min(axis=1)
            expected[rows] = (d1 - d0) / sigma2
        np.testing.assert_allclose(got, expected, rtol=0, atol=1e-9)
