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

"""Common labeling interface and bit helpers.

A labeling is a bijection between m-bit labels and the integer index box U
of a constellation. Labels are uint8 arrays with the bits of one label on
the last axis, ordered most protected block first.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np

from vcmod.exceptions import LabelingError


class Labeling(Protocol):
    """Protocol implemented by Gray, set-partitioning and hybrid labelings.

    Attributes:
        kind: "gray", "sp" or "hybrid".
    """

    kind: str

    @property
    def width(self) -> int:
        """Total label width m."""
        ...

    @property
    def level_widths(self) -> tuple[int, ...]:
        """Widths of the coded blocks b₁ ... b_q (empty for Gray)."""
        ...

    @property
    def h(self) -> np.ndarray:
        """Diagonal of the constellation's shaping generator."""
        ...

    def map(self, bits: np.ndarray) -> np.ndarray:
        """Maps labels (..., m) to indices (..., n)."""
        ...

    def demap(self, u: np.ndarray) -> np.ndarray:
        """Maps indices (..., n) to labels (..., m)."""
        ...


def level_offsets(widths: tuple[int, ...]) -> tuple[int, ...]:
    """Start position of each block in a label with the given block widths."""
    offsets = [0]
    for w in widths[:-1]:
        offsets.append(offsets[-1] + w)
    return tuple(offsets)


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Packs bits (..., k) into integers, first bit most significant."""
    bits = np.asarray(bits, dtype=np.int64)
    k = bits.shape[-1]
    weights = np.left_shift(1, np.arange(k - 1, -1, -1, dtype=np.int64))
    return bits @ weights


def unpack_bits(values: np.ndarray, width: int) -> np.ndarray:
    """Unpacks integers into bits (..., width), most significant first."""
    values = np.asarray(values, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((values[..., None] >> shifts) & 1).astype(np.uint8)


def check_width(bits: np.ndarray, width: int) -> np.ndarray:
    """Returns bits as uint8 after checking the label width.

    Raises:
        LabelingError: If the last axis is not ``width`` or a value is not 0/1.
    """
    bits = np.asarray(bits)
    if bits.shape[-1] != width:
        raise LabelingError(f"Label width {bits.shape[-1]} does not match m={width}")
    if np.any((bits != 0) & (bits != 1)):
        raise LabelingError("Labels must contain only 0 and 1")
    return bits.astype(np.uint8)
