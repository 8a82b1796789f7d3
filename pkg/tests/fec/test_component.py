"""Tests for vcmod.fec.component."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from vcmod.exceptions import CodeError, ConfigError
from vcmod.fec import FrozenLevel, LdpcCode, UncodedLevel, build_component
from vcmod.fec.component import _TrivialLevel


class TestBuildComponent:
    """Tests for build_component."""

    @pytest.mark.parametrize("spec", ["frozen", "0", " frozen "])
    def test_frozen(self, spec):
        """Tests the spellings of a rate-0 level."""
        level = build_component(spec, 12)
        assert isinstance(level, FrozenLevel)
        assert (level.N, level.K, level.rate) == (12, 0, Fraction(0))

    @pytest.mark.parametrize("spec", ["uncoded", "1"])
    def test_uncoded(self, spec):
        """Tests the spellings of a rate-1 level."""
        level = build_component(spec, 12)
        assert isinstance(level, UncodedLevel)
        assert level.rate == 1

    def test_rate_builds_ldpc(self):
        """Tests that a num/den value builds a code of the given length."""
        level = build_component("1/2", 400)
        assert isinstance(level, LdpcCode)
        assert level.N == 400
        assert level.rate == Fraction(1, 2)

    def test_named_code(self):
        """Tests that built-in names pass through."""
        assert build_component("hamming-7-4", 999).N == 7

    def test_unknown(self):
        """Tests that an unknown value raises ConfigError."""
        with pytest.raises(ConfigError):
            build_component("half", 400)


class TestTrivialLevels:
    """Tests for FrozenLevel and UncodedLevel."""

    def test_frozen_round_trip(self):
        """Tests that a frozen level sends and decodes zeros."""
        level = FrozenLevel(5)
        np.testing.assert_array_equal(level.encode(np.zeros(0)), np.zeros(5))
        result = level.decode(np.array([-9.0, 1.0, -1.0, 2.0, -3.0]))
        np.testing.assert_array_equal(result.codeword, np.zeros(5))
        assert result.info.size == 0
        assert result.converged

    def test_frozen_refuses_info(self):
        """Tests that information bits on a frozen level raise CodeError."""
        with pytest.raises(CodeError, match="expected 0 values"):
            FrozenLevel(5).encode(np.ones(2))

    def test_uncoded_slices(self):
        """Tests that an uncoded level returns hard decisions."""
        level = UncodedLevel(4)
        np.testing.assert_array_equal(level.encode([1, 0, 1, 1]), [1, 0, 1, 1])
        result = level.decode(np.array([-0.1, 0.2, -3.0, 0.0]))
        np.testing.assert_array_equal(result.info, [1, 0, 1, 0])

    def test_non_positive_length(self):
        """Tests that a zero length raises CodeError."""
        with pytest.raises(CodeError, match="positive"):
            UncodedLevel(0)

    def test_base_is_abstract(self):
        """Tests that the shared level base cannot be built on its own."""
        with pytest.raises(TypeError):
            _TrivialLevel("bare", 4)

    def test_subclass_without_info_length(self):
        """Tests that a level lacking K is refused at construction."""

        class _NoInfo(_TrivialLevel):
            def encode(self, info):
                return info

            def decode(self, llr, max_iter=0):
                return llr

        with pytest.raises(TypeError):
            _NoInfo("partial", 4)

    @pytest.mark.parametrize(
        ("level", "rate"),
        [(FrozenLevel(6), Fraction(0)), (UncodedLevel(6), Fraction(1))],
        ids=["frozen", "uncoded"],
    )
    def test_rates(self, level, rate):
        """Tests the rates derived from K and N."""
        assert level.rate == rate
