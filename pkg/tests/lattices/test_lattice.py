"""Tests for vcmod.lattices.lattice and vcmod.lattices.matrix."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from vcmod.exceptions import ConfigError, LatticeError
from vcmod.lattices import (
    barnes_wall,
    build_rotation,
    cvp_sphere_decode,
    hermite_lower,
    lattice_from_name,
    leech,
    load_generator,
    partition_order,
    residue,
)


class TestLatticeFromName:
    """Tests for lattice_from_name."""

    @pytest.mark.parametrize(
        ("name", "dimension", "volume"),
        [
            ("Z8", 8, 1),
            ("D8", 8, 2),
            ("E8", 8, 1),
            ("8E8", 8, 8**8),
            ("E8R8", 8, 16),
            ("4D2", 2, 32),
            ("BW16", 16, 2**12),
            ("Leech24", 24, 2**36),
        ],
    )
    def test_dimension_and_volume(self, name, dimension, volume):
        """Tests that named lattices have the expected fundamental volume."""
        lattice = lattice_from_name(name)
        assert lattice.dimension == dimension
        assert lattice.determinant == volume

    def test_canonical_name_round_trips(self):
        """Tests that scale and rotation suffixes survive in the name."""
        assert lattice_from_name("2E8R8").name == "2E8R8"
        assert lattice_from_name("16Leech24R24").name == "16Leech24R24"
        assert lattice_from_name("1Z4").name == "Z4"

    @pytest.mark.parametrize("name", ["E9", "Q8", "BW8", "E8R4", "8E"])
    def test_unknown_names_raise(self, name):
        """Tests that malformed or unsupported names raise ConfigError."""
        with pytest.raises(ConfigError):
            lattice_from_name(name)

    def test_tags(self):
        """Tests family tags of scaled and rotated lattices."""
        assert lattice_from_name("8E8").tag == "gosset-scaled"
        assert lattice_from_name("2E8R8").tag == "rotated"


class TestContainment:
    """Tests for exact membership and sublattice orders."""

    def test_d8_membership(self):
        """Tests the even-sum rule of D8."""
        d8 = lattice_from_name("D8")
        assert d8.contains([1, 1, 0, 0, 0, 0, 0, 0])
        assert not d8.contains([1, 0, 0, 0, 0, 0, 0, 0])

    def test_e8_contains_half_integer_glue(self):
        """Tests that E8 holds the all-halves vector but not a single half."""
        e8 = lattice_from_name("E8")
        assert e8.contains([0.5] * 8)
        assert not e8.contains([0.5] + [0.0] * 7)

    def test_leech_minimal_vectors(self):
        """Tests membership of a norm-32 vector and rejection of (2, 2, 0...)."""
        lattice = leech()
        assert lattice.contains([4, 4] + [0] * 22)
        assert lattice.contains([-3] + [1] * 23)
        assert not lattice.contains([2, 2] + [0] * 22)

    def test_barnes_wall_contains_scaled_cubic(self):
        """Tests that 4Z16 sits inside BW16."""
        assert barnes_wall().contains([4] + [0] * 15)
        assert not barnes_wall().contains([2] + [0] * 15)

    def test_partition_order_of_e8_24(self):
        """Tests |Z8 / 8E8| = 2^24."""
        order = partition_order(lattice_from_name("Z8"), lattice_from_name("8E8"))
        assert order == 16777216

    def test_partition_order_rejects_non_sublattice(self):
        """Tests that D8 is not a sublattice of E8R8."""
        with pytest.raises(LatticeError, match="not a sublattice"):
            partition_order(lattice_from_name("E8R8"), lattice_from_name("D8"))


class TestQuantize:
    """Tests for Lattice.quantize on scaled and rotated lattices."""

    @pytest.mark.parametrize("name", ["4D2", "2E8R8", "8E8", "D4"])
    def test_fast_path_matches_sphere_decoder(self, name):
        """Tests that the frame-undo quantizer is a true nearest point."""
        lattice = lattice_from_name(name)
        rng = np.random.default_rng(3)
        y = rng.normal(scale=5.0, size=(30, lattice.dimension))
        fast = lattice.quantize(y)
        slow = cvp_sphere_decode(lattice, y)
        np.testing.assert_allclose(
            np.sum((y - fast) ** 2, axis=-1), np.sum((y - slow) ** 2, axis=-1)
        )
        assert all(lattice.contains(row) for row in fast[:5])

    def test_single_vector_shape(self):
        """Tests that a 1-D input keeps its shape."""
        out = lattice_from_name("E8").quantize([0.1] * 8)
        assert out.shape == (8,)

    def test_barnes_wall_quantizes_to_members(self):
        """Tests that BW16 sphere decoding returns lattice points."""
        lattice = lattice_from_name("BW16")
        y = np.random.default_rng(5).normal(scale=2.0, size=(3, 16))
        for row in lattice.quantize(y):
            assert lattice.contains(np.rint(row).astype(int))


class TestMinimumNorm:
    """Tests for Lattice.minimum_norm."""

    @pytest.mark.parametrize(
        ("name", "norm"),
        [("Z4", 1), ("D8", 2), ("E8", 2), ("E8R8", 4), ("2E8", 8), ("BW16", 8)],
    )
    def test_minimum_norms(self, name, norm):
        """Tests squared minimum distances of the named lattices."""
        assert lattice_from_name(name).minimum_norm() == Fraction(norm)

    @pytest.mark.parametrize(
        ("name", "factor", "norm"),
        [
            ("Z4", Fraction(1, 1000), Fraction(1, 1_000_000)),
            ("E8", Fraction(7, 3), Fraction(98, 9)),
            ("D8R8", Fraction(1, 257), Fraction(4, 257**2)),
        ],
    )
    def test_exact_under_fractional_scale(self, name, factor, norm):
        """Tests that norms with large denominators come back exactly."""
        scaled = lattice_from_name(name).scaled(factor)
        assert scaled.minimum_norm() == norm


class TestMatrixHelpers:
    """Tests for hermite_lower, residue and build_rotation."""

    def test_hermite_form_is_canonical(self):
        """Tests that two spanning sets of one lattice give one Hermite form."""
        a = hermite_lower([[4, 4], [4, -4]])
        b = hermite_lower([[8, 0], [4, 4], [12, 4]])
        assert a.tolist() == [[8, 0], [4, 4]]
        assert np.array_equal(a, b)

    def test_residue_lands_in_box(self):
        """Tests that residues lie in the Hermite box and stay congruent."""
        hnf = hermite_lower([[4, 4], [4, -4]])
        assert residue(np.array([9, 5]), hnf).tolist() == [5, 1]
        assert residue(np.array([-3, -3]), hnf).tolist() == [1, 1]

    def test_singular_spanning_set_raises(self):
        """Tests that a rank-deficient set raises LatticeError."""
        with pytest.raises(LatticeError, match="singular"):
            hermite_lower([[1, 1], [2, 2]])

    def test_rotation_is_scaled_orthogonal(self):
        """Tests R4·R4ᵀ = 2I."""
        r = build_rotation(4)
        assert np.array_equal(r @ r.T, 2 * np.eye(4, dtype=np.int64))

    def test_rotation_rejects_odd_dimension(self):
        """Tests that R3 is rejected."""
        with pytest.raises(LatticeError, match="even"):
            build_rotation(3)


class TestLoadGenerator:
    """Tests for load_generator."""

    def test_reads_rational_entries(self, tmp_path):
        """Tests that comments, commas and fractions are accepted."""
        path = tmp_path / "hex.txt"
        path.write_text("# basis\n2, 0\n1 1/2\n\n", encoding="utf-8")
        lattice = load_generator(path)
        assert lattice.base == "hex"
        assert lattice.determinant == 1
        assert lattice.family == "generic"

    def test_missing_file(self, tmp_path):
        """Tests that a missing file raises ConfigError."""
        with pytest.raises(ConfigError, match="not found"):
            load_generator(tmp_path / "none.txt")

    def test_bad_entry_reports_line(self, tmp_path):
        """Tests that an unparsable entry names its line."""
        path = tmp_path / "bad.txt"
        path.write_text("1 0\n0 x\n", encoding="utf-8")
        with pytest.raises(LatticeError, match=":2:"):
            load_generator(path)
