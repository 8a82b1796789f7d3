"""
Integration tests checking vcmod against slower reference computations.

- Fast quantizers against the generic sphere decoder
- Uncoded BER ordering of the three mappings at β = 12
- The MLCM error floor against genie-aided uncoded-level errors
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from vcmod.cm import build_mlcm_scheme
from vcmod.labeling import build_labeling
from vcmod.lattices import cvp_sphere_decode, lattice_from_name
from vcmod.sim import StopRule, coded_ber, uncoded_ber
from vcmod.vc import build_constellation

pytestmark = pytest.mark.integration


def _stderr(ber: float, bits: int) -> float:
    return math.sqrt(ber * (1.0 - ber) / bits)


class TestQuantizerOracle:
    """Integration tests comparing fast quantizers with sphere decoding."""

    @pytest.mark.parametrize(
        "name", ["Z1", "Z8", "Z24", "D2", "D5", "D8", "D16", "E8"]
    )
    def test_same_distance_as_sphere_decoder(self, name):
        """Test 10⁴ random points for zero distance mismatches."""
        lattice = lattice_from_name(name)
        y = np.random.default_rng(lattice.dimension).normal(
            scale=4.0, size=(10_000, lattice.dimension)
        )
        fast = np.sum((y - lattice.quantize(y)) ** 2, axis=-1)
        slow = np.sum((y - cvp_sphere_decode(lattice, y)) ** 2, axis=-1)
        assert np.count_nonzero(~np.isclose(fast, slow, rtol=0, atol=1e-9)) == 0


class TestUncodedOrdering:
    """Integration tests for the uncoded BER of Gray, hybrid and SP on E8-48."""

    def test_gray_beats_hybrid_beats_sp(self):
        """Test BER(Gray) < BER(hybrid) < BER(SP) beyond the MC error."""
        c = build_constellation("E8-48")
        stop = StopRule(max_errors=10**9, max_bits=2_400_000)
        bers = {}
        chains = {"gray": None, "hybrid": "hybrid-p1", "sp": "table-IV-n8"}
        for kind, chain in chains.items():
            labeling = build_labeling(c, kind, chain)
            (record,) = uncoded_ber(c, labeling, [27.0], stop=stop, seed=12)
            bers[kind] = (record.ber, record.bits)

        (gray, n_gray), (hybrid, n_hybrid), (sp, n_sp) = bers.values()
        assert gray < hybrid < sp
        gap = 3 * math.hypot(_stderr(gray, n_gray), _stderr(hybrid, n_hybrid))
        assert hybrid - gray > gap
        gap = 3 * math.hypot(_stderr(hybrid, n_hybrid), _stderr(sp, n_sp))
        assert sp - hybrid > gap


class TestMlcmFloor:
    """Integration tests for the error floor of E8-24 hybrid MLCM."""

    def test_floor_is_the_uncoded_level(self):
        """Test the floor above the waterfall against genie-aided decoding."""
        c = build_constellation("E8-24")
        scheme = build_mlcm_scheme(
            c, build_labeling(c, "hybrid"), ["2/3"], length=1620
        )
        stop = StopRule(max_errors=200, max_bits=3_000_000)
        (floor,) = coded_ber(scheme, [19.0], stop=stop, seed=8)
        (genie,) = coded_ber(scheme, [19.0], stop=stop, seed=8, genie=True)

        assert floor.errors > 0
        share = scheme.level_info_bits[-1] / scheme.info_bits
        uncoded_bits = round(genie.bits * share)
        expected = share * genie.level_bers[-1]
        error = math.hypot(
            _stderr(floor.ber, floor.bits),
            share * _stderr(genie.level_bers[-1], uncoded_bits),
        )
        assert abs(floor.ber - expected) <= 3 * error
