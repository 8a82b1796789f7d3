"""Tests for vcmod.fec.interleaver."""

from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import chisquare

from vcmod.exceptions import CodeError
from vcmod.fec import Interleaver, deinterleave, interleave


class TestInterleaver:
    """Tests for Interleaver, interleave and deinterleave."""

    def test_is_a_permutation(self):
        """Tests that the permutation covers every position once."""
        perm = Interleaver(seed=1, length=100).permutation
        np.testing.assert_array_equal(np.sort(perm), np.arange(100))

    def test_equal_seeds_agree(self):
        """Tests that equal seeds and lengths give the same permutation."""
        a = Interleaver(seed=7, length=64).permutation
        b = Interleaver(seed=7, length=64).permutation
        np.testing.assert_array_equal(a, b)

    def test_inverse(self):
        """Tests that deinterleave undoes interleave on a 2-D frame."""
        pi = Interleaver(seed=3, length=50)
        frame = np.arange(100.0).reshape(50, 2)
        mixed = interleave(pi, frame)
        np.testing.assert_array_equal(mixed[0], frame[pi.permutation[0]])
        np.testing.assert_array_equal(deinterleave(pi, mixed), frame)

    def test_permutation_is_read_only(self):
        """Tests that the cached permutation cannot be modified."""
        perm = Interleaver(seed=0, length=8).permutation
        with pytest.raises(ValueError):
            perm[0] = 1

    def test_wrong_length(self):
        """Tests that a frame of the wrong length raises CodeError."""
        with pytest.raises(CodeError, match="length 10 got 9"):
            interleave(Interleaver(seed=0, length=10), np.zeros(9))

    def test_positions_uniform_across_seeds(self):
        """Tests that each input lands on every output equally often over seeds."""
        length, seeds = 16, 3200
        counts = np.zeros((length, length), dtype=np.int64)
        for seed in range(seeds):
            perm = Interleaver(seed=seed, length=length).permutation
            counts[perm, np.arange(length)] += 1
        assert np.all(counts.sum(axis=1) == seeds)
        for row in counts:
            assert chisquare(row).pvalue > 1e-4
