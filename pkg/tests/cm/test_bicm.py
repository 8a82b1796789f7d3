"""Tests for vcmod.cm.bicm."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from vcmod.cm import bicm_llr, bicm_receive, bicm_transmit, build_bicm_scheme
from vcmod.exceptions import CodeError
from vcmod.fec import builtin_code
from vcmod.vc import build_constellation


@pytest.fixture
def hamming():
    """The (7,4) Hamming code."""
    return builtin_code("hamming-7-4")


class TestBicmScheme:
    """Tests for build_bicm_scheme and frame bookkeeping."""

    def test_frame_fills_whole_symbols(self, hamming):
        """Tests that m/gcd(N, m) codewords make up a frame."""
        scheme = build_bicm_scheme(build_constellation("16-QAM"), hamming)
        assert scheme.codewords == 4
        assert scheme.symbols == 7
        assert scheme.info_bits == 16
        assert scheme.interleaver.length == 28

    def test_one_codeword_when_m_divides_n(self):
        """Tests a 64-QAM frame with a length-400 code."""
        code = builtin_code("qc-1/2-400")
        scheme = build_bicm_scheme(build_constellation("64-QAM"), code)
        assert (scheme.codewords, scheme.symbols) == (3, 200)
        assert scheme.total_rate == Fraction(3)

    def test_default_radius(self, hamming):
        """Tests that the ball radius follows the dimension."""
        scheme = build_bicm_scheme(build_constellation("E8-24"), hamming)
        assert scheme.radius2 == 6
        scheme = build_bicm_scheme(build_constellation("E8-24"), hamming, radius2=2)
        assert scheme.radius2 == 2


class TestBicmLink:
    """Tests for bicm_transmit and bicm_receive."""

    def test_qam_noiseless(self, hamming):
        """Tests that a clean 16-QAM frame decodes without errors."""
        scheme = build_bicm_scheme(build_constellation("16-QAM"), hamming, seed=4)
        info = np.random.default_rng(1).integers(0, 2, scheme.info_bits)
        x = bicm_transmit(scheme, info)
        assert x.shape == (7, 2)
        result = bicm_receive(scheme, x, sigma2=0.01, info=info)
        assert result.prefec_ber == 0.0
        assert result.postfec_ber == 0.0
        assert all(result.converged)
        np.testing.assert_array_equal(result.info, info)

    def test_vc_noiseless(self, hamming):
        """Tests that a clean E8-24 frame decodes through ball LLRs."""
        scheme = build_bicm_scheme(build_constellation("E8-24"), hamming, radius2=2)
        info = np.random.default_rng(2).integers(0, 2, scheme.info_bits)
        x = bicm_transmit(scheme, info)
        assert bicm_llr(scheme, x, 0.05).shape == (7, 24)
        result = bicm_receive(scheme, x, sigma2=0.05, info=info)
        assert result.postfec_ber == 0.0
        assert len(result.iterations) == 24

    def test_without_reference(self, hamming):
        """Tests that BERs are None when no info bits are given."""
        scheme = build_bicm_scheme(build_constellation("16-QAM"), hamming)
        x = bicm_transmit(scheme, np.zeros(scheme.info_bits))
        result = bicm_receive(scheme, x, sigma2=0.01)
        assert result.prefec_ber is None
        assert result.postfec_ber is None

    def test_wrong_info_length(self, hamming):
        """Tests that a short frame raises CodeError."""
        scheme = build_bicm_scheme(build_constellation("16-QAM"), hamming)
        with pytest.raises(CodeError, match="takes 16 info bits"):
            bicm_transmit(scheme, np.zeros(15))
