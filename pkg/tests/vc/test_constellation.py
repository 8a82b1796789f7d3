"""Tests for vcmod.vc.constellation."""

from __future__ import annotations

import numpy as np
import pytest

from vcmod.exceptions import ConstellationError, UnsupportedError
from vcmod.lattices import lattice_from_name
from vcmod.lattices.matrix import to_int
from vcmod.vc import (
    average_energy,
    build_constellation,
    build_vc,
    decode_w,
    encode_g,
    enumerate_points,
    index_grid,
    nearest_in_coset,
    optimize_offset,
    shaping_gain_db,
    triangularize,
    with_offset,
)


@pytest.fixture
def example_vc():
    """The 32-point VC Z²/4D2."""
    return build_vc("4D2", name="example-1")


class TestBuildVc:
    """Tests for build_vc."""

    def test_example_sizes(self, example_vc):
        """Tests h, M, m and β of Z²/4D2."""
        assert example_vc.h.tolist() == [8, 4]
        assert example_vc.M == 32
        assert example_vc.m == 5
        assert example_vc.beta == 5.0
        assert example_vc.bit_widths == (3, 2)

    def test_default_offset_is_half(self, example_vc):
        """Tests that the offset defaults to ½·1."""
        assert example_vc.offset.tolist() == [0.5, 0.5]

    def test_non_integer_shaping_lattice(self):
        """Tests that E8 in the half-integer frame is rejected."""
        with pytest.raises(ConstellationError, match="not inside"):
            build_vc("E8")

    def test_diagonal_must_be_power_of_two(self):
        """Tests that 3Z2 is rejected."""
        with pytest.raises(ConstellationError, match="power of 2"):
            build_vc("3Z2")


class TestEncodeDecode:
    """Tests for encode_g and decode_w."""

    @pytest.mark.parametrize("shaping", ["4D2", "4D4", "2E8R8"])
    def test_every_index_round_trips(self, shaping):
        """Tests decode_w(encode_g(u)) = u over the whole index box."""
        vc = build_vc(shaping)
        u = index_grid(vc.h)
        assert np.array_equal(decode_w(vc, encode_g(vc, u)), u)

    @pytest.mark.parametrize("shaping", ["4D2", "2E8R8"])
    def test_points_lie_in_voronoi_region(self, shaping):
        """Tests that no shaping lattice point is closer than the origin."""
        vc = build_vc(shaping)
        x = enumerate_points(vc)
        q = vc.shaping.quantize(x)
        np.testing.assert_allclose(
            np.sum(x**2, axis=-1), np.sum((x - q) ** 2, axis=-1)
        )

    def test_points_are_distinct(self, example_vc):
        """Tests that the M points are pairwise distinct."""
        x = enumerate_points(example_vc)
        assert np.unique(x, axis=0).shape[0] == example_vc.M

    def test_decode_is_invariant_under_shaping_shifts(self, example_vc):
        """Tests w(y + λs) = w(y) for lattice vectors of Λs."""
        rng = np.random.default_rng(2)
        y = rng.uniform(-6, 6, size=(200, 2))
        shift = 3 * example_vc.gs[0] - 2 * example_vc.gs[1]
        assert np.array_equal(decode_w(example_vc, y + shift), decode_w(example_vc, y))

    def test_noisy_points_decode_to_their_index(self, example_vc):
        """Tests that noise below half the minimum distance is corrected."""
        rng = np.random.default_rng(4)
        u = index_grid(example_vc.h)
        y = encode_g(example_vc, u) + rng.uniform(-0.45, 0.45, size=(32, 2))
        assert np.array_equal(decode_w(example_vc, y), u)

    def test_out_of_range_index(self, example_vc):
        """Tests that an index outside the box raises ConstellationError."""
        with pytest.raises(ConstellationError, match="out of range"):
            encode_g(example_vc, np.array([8, 0]))
        with pytest.raises(ConstellationError, match="width"):
            encode_g(example_vc, np.array([1, 0, 0]))


class TestNearestInCoset:
    """Tests for nearest_in_coset."""

    def test_vc_coset_decision(self, example_vc):
        """Tests the nearest point of 2Z² + ĉ − a."""
        out = nearest_in_coset(example_vc, np.array([0.2, 0.2]), np.array([0, 0]), 1)
        assert out.tolist() == [-0.5, -0.5]
        out = nearest_in_coset(example_vc, np.array([0.2, 0.2]), np.array([1, 1]), 1)
        assert out.tolist() == [0.5, 0.5]

    def test_qam_coset_decision_is_clipped(self):
        """Tests that QAM coset decisions stay inside the box."""
        qam = build_constellation("16-QAM")
        out = nearest_in_coset(qam, np.array([10.0, -10.0]), np.array([1, 0]), 1)
        assert out.tolist() == [1.5, -1.5]


class TestEnergy:
    """Tests for average_energy, optimize_offset and shaping_gain_db."""

    def test_exact_qam_energy(self):
        """Tests Es of 64-QAM on the unit grid: 2·(64 − 1)/12."""
        estimate = average_energy(build_constellation("64-QAM"), mode="exact")
        assert estimate.value == pytest.approx(10.5)
        assert estimate.stderr == 0.0
        assert estimate.mode == "exact"

    def test_monte_carlo_agrees_with_exact(self, example_vc):
        """Tests that the sampled energy is within five standard errors."""
        exact = average_energy(example_vc, mode="exact").value
        sampled = average_energy(
            example_vc,
            mode="monte-carlo",
            trials=20_000,
            rng=np.random.default_rng(9),
        )
        assert abs(sampled.value - exact) < 5 * sampled.stderr

    def test_exact_mode_refuses_large_constellations(self):
        """Tests that E8-24 cannot be enumerated."""
        with pytest.raises(UnsupportedError, match="enumeration"):
            average_energy(build_constellation("E8-24"), mode="exact")

    def test_auto_mode_samples_large_constellations(self):
        """Tests that auto mode falls back to Monte-Carlo above 2^20 points."""
        estimate = average_energy(
            build_constellation("E8-24"), trials=2_000, rng=np.random.default_rng(1)
        )
        assert estimate.mode == "monte-carlo"
        assert estimate.trials == 2_000

    def test_unknown_mode(self, example_vc):
        """Tests that an unknown mode raises ValueError."""
        with pytest.raises(ValueError, match="Unknown energy mode"):
            average_energy(example_vc, mode="closed-form")

    def test_offset_refinement_does_not_raise_energy(self, example_vc):
        """Tests that the refined offset is no worse than ½·1."""
        offset = optimize_offset(example_vc)
        refined = with_offset(example_vc, offset)
        assert offset.shape == (2,)
        assert (
            average_energy(refined, mode="exact").value
            <= average_energy(example_vc, mode="exact").value + 1e-12
        )

    def test_qam_has_no_shaping_gain(self):
        """Tests that square QAM matches its own cubic reference."""
        assert shaping_gain_db(build_constellation("64-QAM")) == pytest.approx(0.0)

    def test_e8_shaping_gain(self):
        """Tests that E8-24 saves energy over the 8-PAM product."""
        vc = build_constellation("E8-24")
        es = average_energy(
            vc, mode="monte-carlo", trials=20_000, rng=np.random.default_rng(5)
        ).value
        assert 0.3 < shaping_gain_db(vc, es) < 1.0


class TestTriangularize:
    """Tests for triangularize."""

    @pytest.mark.parametrize("name", ["4D2", "4D4", "2E8R8", "BW16"])
    def test_invariant_under_unimodular_change(self, name):
        """Tests that U·G gives the same Gs for unimodular U."""
        g = to_int(lattice_from_name(name).generator)
        n = g.shape[0]
        rng = np.random.default_rng(n)
        u = np.eye(n, dtype=np.int64)
        for _ in range(2 * n):
            i, j = rng.choice(n, size=2, replace=False)
            u[i] += int(rng.choice([-1, 1])) * u[j]
        u[[0, n - 1]] = u[[n - 1, 0]]
        np.testing.assert_array_equal(triangularize(u @ g), triangularize(g))

    def test_shape(self):
        """Tests lower-triangular form with a positive diagonal."""
        gs = triangularize(to_int(lattice_from_name("4D4").generator))
        assert np.all(np.triu(gs, k=1) == 0)
        assert np.all(np.diag(gs) > 0)
        rows, cols = np.tril_indices(gs.shape[0], k=-1)
        below = gs[rows, cols]
        assert np.all((below >= 0) & (below < np.diag(gs)[cols]))

    def test_rejects_fractional_generator(self):
        """Tests that a non-integer generator raises ConstellationError."""
        with pytest.raises(ConstellationError, match="integer"):
            triangularize([[0.5, 0.0], [0.0, 1.0]])
