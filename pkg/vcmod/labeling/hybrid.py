# Copyright 2025 Roger Cibrian
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Hybrid labeling along the chain Zⁿ/2^{p₁}Zⁿ/.../2^pZⁿ.

Level i carries n·(p_i − p_{i−1}) bits. Each dimension's slice of the block
is Gray decoded to a digit d_i in [0, 2^{p_i − p_{i−1}}) and placed at weight
2^{p_{i−1}}, so c_i = 2^{p_{i−1}}·d_i and s = Σ c_i lies in [0, 2^p)ⁿ. The
remaining bits are Gray coded over h/2^p and u = s + 2^p·t.

Demapping needs no tables: c_i = (u − Σ_{j<i} c_j) mod 2^{p_i}.

Chain names: ``hybrid-p<p>`` is the unit-step chain p_i = i for i = 1 ... p;
``hybrid-<p₁>-<p₂>-...`` lists the exponents explicitly (``hybrid-1-3``).

Example:
    ```python
    import numpy as np
    from vcmod.labeling import HybridLabeling, build_hybrid_chain
    from vcmod.vc import catalog_build

    vc = catalog_build("example-1")
    hy = HybridLabeling(vc, build_hybrid_chain("hybrid-p1", vc.n))
    hy.demap(np.array([3, 2]))   # c₁ = (1, 0), then Gray bits of (1, 1)
    ```
"""

from __future__ import annotations

from dataclasses import dataclass
import re

import numpy as np

from vcmod.exceptions import ConfigError, LabelingError
from vcmod.labeling.base import check_width, level_offsets
from vcmod.labeling.gray import brgc_to_int, int_to_brgc
from vcmod.vc import VoronoiConstellation

_UNIT_CHAIN = re.compile(r"^hybrid-p(\d+)$")
_EXPLICIT_CHAIN = re.compile(r"^hybrid((?:-\d+)+)$")


@dataclass(frozen=True)
class HybridChainSpec:
    """Exponents of a hybrid chain.

    Attributes:
        name: Chain name.
        n: Dimension.
        exponents: p₁ < p₂ < ... < p_q (p₀ = 0 is implicit).
    """

    name: str
    n: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.exponents:
            raise LabelingError("A hybrid chain needs at least one level")
        previous = 0
        for p in self.exponents:
            if p <= previous:
                raise LabelingError(
                    f"Hybrid exponents must increase from 0, got {self.exponents}"
                )
            previous = p

    @property
    def p(self) -> int:
        """Terminal exponent p_q."""
        return self.exponents[-1]

    @property
    def lower(self) -> tuple[int, ...]:
        """p₀ ... p_{q−1}."""
        return (0,) + self.exponents[:-1]

    @property
    def steps(self) -> tuple[int, ...]:
        """p_i − p_{i−1} per level."""
        pairs = zip(self.lower, self.exponents, strict=True)
        return tuple(hi - lo for lo, hi in pairs)

    @property
    def widths(self) -> tuple[int, ...]:
        """k_i = n·(p_i − p_{i−1})."""
        return tuple(self.n * step for step in self.steps)

    @property
    def coded_bits(self) -> int:
        """n·p."""
        return self.n * self.p


def build_hybrid_chain(name: str, n: int) -> HybridChainSpec:
    """Parses a hybrid chain name for dimension n.

    Raises:
        ConfigError: If the name is not a hybrid chain name.
    """
    unit = _UNIT_CHAIN.match(name)
    if unit:
        exponents = tuple(range(1, int(unit.group(1)) + 1))
    else:
        explicit = _EXPLICIT_CHAIN.match(name)
        if not explicit:
            raise ConfigError(
                f"Unknown hybrid chain: {name!r} (expected hybrid-p<p> or "
                "hybrid-<p1>-<p2>-...)"
            )
        exponents = tuple(int(v) for v in explicit.group(1).strip("-").split("-"))
    try:
        return HybridChainSpec(name, n, exponents)
    except LabelingError as err:
        raise ConfigError(f"Invalid hybrid chain {name!r}: {err}") from err


class HybridLabeling:
    """Hybrid labeling of a constellation.

    Attributes:
        kind: Always "hybrid".
        chain: The exponent chain.
    """

    kind = "hybrid"

    def __init__(
        self, constellation: VoronoiConstellation, chain: HybridChainSpec
    ) -> None:
        if chain.n != constellation.n:
            raise LabelingError(
                f"Chain {chain.name} has dimension {chain.n}, "
                f"constellation {constellation.name} has {constellation.n}"
            )
        h = constellation.h
        if np.any(h % (2**chain.p)):
            raise LabelingError(
                f"Chain {chain.name} needs h divisible by 2^{chain.p}, "
                f"got h={h.tolist()}"
            )
        self.chain = chain
        self._h = h
        self._width = constellation.m
        self._outer = h // (2**chain.p)

    @property
    def h(self) -> np.ndarray:
        """Per-dimension sizes of the constellation."""
        return self._h

    @property
    def width(self) -> int:
        """Label width m."""
        return self._width

    @property
    def p(self) -> int:
        """Terminal exponent."""
        return self.chain.p

    @property
    def level_widths(self) -> tuple[int, ...]:
        """Widths k_i of the coded blocks."""
        return self.chain.widths

    @property
    def level_offsets(self) -> tuple[int, ...]:
        """Start bit of each coded block."""
        return level_offsets(self.level_widths)

    @property
    def coded_bits(self) -> int:
        """n·p."""
        return self.chain.coded_bits

    def _digit_sizes(self, level: int) -> np.ndarray:
        return np.full(self.chain.n, 2 ** self.chain.steps[level], dtype=np.int64)

    def level_coset(self, level: int, block: np.ndarray) -> np.ndarray:
        """c_i = 2^{p_{i−1}}·f_BRGC(b_i) for the 0-based level index."""
        digit = brgc_to_int(block, self._digit_sizes(level))
        return (2 ** self.chain.lower[level]) * digit

    def level_bits(
        self, level: int, points: np.ndarray, coset: np.ndarray
    ) -> np.ndarray:
        """Block b_i of integer points lying in 2^{p_{i−1}}Zⁿ + coset."""
        lo = self.chain.lower[level]
        shifted = np.asarray(points, dtype=np.int64) - coset
        c = np.mod(shifted, 2 ** self.chain.exponents[level])
        return int_to_brgc(c >> lo, self._digit_sizes(level))

    def coset_sum(self, bits: np.ndarray, levels: int | None = None) -> np.ndarray:
        """Σ c_i over the first ``levels`` blocks of the labels."""
        bits = np.asarray(bits)
        count = len(self.level_widths) if levels is None else levels
        c = np.zeros(bits.shape[:-1] + (self.chain.n,), dtype=np.int64)
        for level in range(count):
            start = self.level_offsets[level]
            block = bits[..., start : start + self.level_widths[level]]
            c += self.level_coset(level, block)
        return c

    def map(self, bits: np.ndarray) -> np.ndarray:
        """f_H, see hybrid_map."""
        bits = check_width(bits, self._width)
        t = brgc_to_int(bits[..., self.coded_bits :], self._outer)
        return self.coset_sum(bits) + (2**self.chain.p) * t

    def demap(self, u: np.ndarray) -> np.ndarray:
        """f_H⁻¹, see hybrid_demap."""
        u = np.asarray(u, dtype=np.int64)
        if u.shape[-1] != self.chain.n:
            raise LabelingError(f"Index width {u.shape[-1]} != n={self.chain.n}")
        acc = np.zeros_like(u)
        blocks = []
        for level in range(len(self.chain.exponents)):
            blocks.append(self.level_bits(level, u, acc))
            acc = acc + np.mod(u - acc, 2 ** self.chain.exponents[level])
        rest = (u - acc) // (2**self.chain.p)
        blocks.append(int_to_brgc(rest, self._outer))
        return np.concatenate(blocks, axis=-1).astype(np.uint8)


def hybrid_map(labeling: HybridLabeling, bits: np.ndarray) -> np.ndarray:
    """Hybrid map from labels (..., m) to indices (..., n).

    Raises:
        LabelingError: If the label width is wrong.
    """
    return labeling.map(bits)


def hybrid_demap(labeling: HybridLabeling, u: np.ndarray) -> np.ndarray:
    """Hybrid demap from indices (..., n) to labels (..., m).

    Each c_i is read off by successive reduction modulo 2^{p_i}; the
    remaining (u − s)/2^p is Gray encoded over h/2^p.
    """
    return labeling.demap(u)
