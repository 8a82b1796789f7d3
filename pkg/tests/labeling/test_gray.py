"""Tests for vcmod.labeling.gray and vcmod.labeling.base."""

from __future__ import annotations

import numpy as np
import pytest

from vcmod.exceptions import LabelingError
from vcmod.labeling import (
    GrayLabeling,
    brgc_to_int,
    check_width,
    int_to_brgc,
    level_offsets,
    pack_bits,
    unpack_bits,
)


class TestBitHelpers:
    """Tests for pack_bits, unpack_bits, level_offsets and check_width."""

    def test_pack_and_unpack_are_msb_first(self):
        """Tests that the first bit is the most significant."""
        assert pack_bits(np.array([1, 0, 1])) == 5
        assert unpack_bits(np.array([6]), 4).tolist() == [[0, 1, 1, 0]]

    def test_level_offsets(self):
        """Tests block start positions."""
        assert level_offsets((1, 3, 4)) == (0, 1, 4)
        assert level_offsets((8,)) == (0,)

    def test_check_width(self):
        """Tests width and value validation of labels."""
        with pytest.raises(LabelingError, match="width"):
            check_width(np.zeros(3), 4)
        with pytest.raises(LabelingError, match="0 and 1"):
            check_width(np.array([0, 2]), 2)


class TestBrgc:
    """Tests for brgc_to_int and int_to_brgc."""

    def test_known_values(self):
        """Tests Gray decoding and encoding of small blocks."""
        assert brgc_to_int(np.array([1, 1]), np.array([4])).tolist() == [2]
        label = int_to_brgc(np.array([3, 2]), np.array([8, 4]))
        assert label.tolist() == [0, 1, 0, 1, 1]

    def test_neighbours_differ_in_one_bit(self):
        """Tests the reflected Gray property along one dimension."""
        labels = int_to_brgc(np.arange(16)[:, None], np.array([16]))
        flips = np.sum(labels[1:] != labels[:-1], axis=-1)
        assert np.all(flips == 1)

    def test_unit_dimension_has_no_bits(self):
        """Tests that h_i = 1 contributes an empty block."""
        label = int_to_brgc(np.array([3, 0]), np.array([4, 1]))
        assert label.tolist() == [1, 0]
        assert brgc_to_int(label, np.array([4, 1])).tolist() == [3, 0]

    def test_rejects_non_power_of_two(self):
        """Tests that a size of 6 raises LabelingError."""
        with pytest.raises(LabelingError, match="power-of-2"):
            int_to_brgc(np.array([1]), np.array([6]))

    def test_rejects_out_of_range(self):
        """Tests that u = h raises LabelingError."""
        with pytest.raises(LabelingError, match="out of range"):
            int_to_brgc(np.array([4]), np.array([4]))


class TestGrayLabeling:
    """Tests for GrayLabeling."""

    def test_bijection_over_box(self):
        """Tests map and demap on every label of an 8x4 box."""
        labeling = GrayLabeling(np.array([8, 4]))
        assert labeling.width == 5
        assert labeling.level_widths == ()
        bits = unpack_bits(np.arange(32), 5)
        u = labeling.map(bits)
        assert np.unique(u, axis=0).shape[0] == 32
        assert np.array_equal(labeling.demap(u), bits)
