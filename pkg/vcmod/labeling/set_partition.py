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

"""Set-partitioning labeling along a lattice partition chain.

The first n·p label bits pick one coset representative per chain step,
c = Σ cᵢ with cᵢ from table Cᵢ; the remaining m − n·p bits are Gray coded
over h/2^p. The index is u = s + 2^p·t with s = c mod 2^p. Demapping peels
off the unique representative of each step whose coset contains the
current residual, then reads the Gray part from (u − s)/2^p.

Labels that agree on the first i blocks map to points of one coset of Λ^i,
so their squared distance modulo Λₛ is at least the minimum norm of Λ^i.

Example:
    ```python
    import numpy as np
    from vcmod.labeling import SetPartitionLabeling, sp_demap, sp_map
    from vcmod.lattices import build_partition_chain
    from vcmod.vc import catalog_build

    sp = SetPartitionLabeling(catalog_build("example-1"),
                              build_partition_chain("table-I-n2"))
    u = sp_map(sp, np.array([1, 0, 1, 1, 0]))
    sp_demap(sp, u)      # array([1, 0, 1, 1, 0], dtype=uint8)
    ```
"""

from __future__ import annotations

import numpy as np

from vcmod.exceptions import LabelingError
from vcmod.labeling.base import check_width, level_offsets, pack_bits
from vcmod.labeling.gray import brgc_to_int, int_to_brgc
from vcmod.lattices import PartitionChainSpec
from vcmod.vc import VoronoiConstellation


class SetPartitionLabeling:
    """SP labeling of a constellation along a partition chain.

    Attributes:
        kind: Always "sp".
        chain: The partition chain Λ⁰/.../2^p·Zⁿ.
    """

    kind = "sp"

    def __init__(
        self, constellation: VoronoiConstellation, chain: PartitionChainSpec
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
        if chain.coded_bits > constellation.m:
            raise LabelingError(
                f"Chain {chain.name} uses {chain.coded_bits} bits, "
                f"constellation has m={constellation.m}"
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
        """Terminal exponent of the chain."""
        return self.chain.p

    @property
    def level_widths(self) -> tuple[int, ...]:
        """Widths k₁ ... k_q of the coded blocks."""
        return self.chain.widths

    @property
    def level_offsets(self) -> tuple[int, ...]:
        """Start bit of each coded block."""
        return level_offsets(self.level_widths)

    @property
    def coded_bits(self) -> int:
        """n·p."""
        return self.chain.coded_bits

    def level_coset(self, level: int, block: np.ndarray) -> np.ndarray:
        """Representative of table C_i carrying the block, 0-based level."""
        return self.chain.tables[level].representatives[pack_bits(block)]

    def coset_sum(self, bits: np.ndarray, levels: int | None = None) -> np.ndarray:
        """Σ cᵢ over the first ``levels`` blocks of the labels."""
        bits = np.asarray(bits)
        count = len(self.chain.tables) if levels is None else levels
        c = np.zeros(bits.shape[:-1] + (self.chain.n,), dtype=np.int64)
        for level in range(count):
            start = self.level_offsets[level]
            block = bits[..., start : start + self.level_widths[level]]
            c += self.level_coset(level, block)
        return c

    def map(self, bits: np.ndarray) -> np.ndarray:
        """f_SP, see sp_map."""
        bits = check_width(bits, self._width)
        step = 2**self.chain.p
        s = np.mod(self.coset_sum(bits), step)
        t = brgc_to_int(bits[..., self.coded_bits :], self._outer)
        return s + step * t

    def demap(self, u: np.ndarray) -> np.ndarray:
        """f_SP⁻¹, see sp_demap."""
        u = np.asarray(u, dtype=np.int64)
        if u.shape[-1] != self.chain.n:
            raise LabelingError(f"Index width {u.shape[-1]} != n={self.chain.n}")
        residual = u.copy()
        blocks = []
        for table in self.chain.tables:
            index = table.locate(residual)
            blocks.append(table.labels[index])
            residual = residual - table.representatives[index]
        step = 2**self.chain.p
        s = np.mod(u, step)
        blocks.append(int_to_brgc((u - s) // step, self._outer))
        return np.concatenate(blocks, axis=-1).astype(np.uint8)


def sp_map(labeling: SetPartitionLabeling, bits: np.ndarray) -> np.ndarray:
    """Set-partitioning map from labels to indices.

    Args:
        labeling: The SP labeling (chain plus constellation sizes).
        bits: Labels (..., m), coded blocks first.

    Returns:
        Indices (..., n) in the box U.

    Raises:
        LabelingError: If the label width is wrong.

    """
    return labeling.map(bits)


def sp_demap(labeling: SetPartitionLabeling, u: np.ndarray) -> np.ndarray:
    """Set-partitioning demap from indices to labels.

    Raises:
        InternalConsistencyError: If a chain step matches zero or several
            coset representatives.
    """
    return labeling.demap(u)
