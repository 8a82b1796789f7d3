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

"""Binary reflected Gray code labeling.

Each dimension i gets a block of log₂ h_i bits. A block is turned into the
integer u_i by Gray decoding (prefix XOR, then binary value); the inverse is
u ^ (u >> 1) written most significant bit first. Neighbouring integers in
one dimension differ in exactly one bit.

Example:
    ```python
    import numpy as np
    from vcmod.labeling import brgc_to_int, int_to_brgc

    brgc_to_int(np.array([1, 1]), np.array([4]))     # array([2])
    int_to_brgc(np.array([3, 2]), np.array([8, 4]))  # array([0, 1, 0, 1, 1])
    ```
"""

from __future__ import annotations

import numpy as np

from vcmod.exceptions import LabelingError
from vcmod.labeling.base import check_width, pack_bits, unpack_bits


def _widths(h: np.ndarray) -> list[int]:
    h = np.asarray(h, dtype=np.int64)
    if np.any(h < 1) or np.any(h & (h - 1)):
        raise LabelingError(f"Gray blocks need power-of-2 sizes, got {h.tolist()}")
    return [int(v).bit_length() - 1 for v in h]


def brgc_to_int(bits: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Gray-decodes a label into per-dimension integers.

    Args:
        bits: Labels (..., Σ log₂ h_i).
        h: Per-dimension sizes (powers of 2).

    Returns:
        Integers (..., n) with 0 <= u_i < h_i.

    Raises:
        LabelingError: If the label width does not match h.

    """
    widths = _widths(h)
    bits = check_width(bits, sum(widths))
    u = np.zeros(bits.shape[:-1] + (len(widths),), dtype=np.int64)
    start = 0
    for i, w in enumerate(widths):
        if w:
            block = np.bitwise_xor.accumulate(bits[..., start : start + w], axis=-1)
            u[..., i] = pack_bits(block)
        start += w
    return u


def int_to_brgc(u: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Gray-encodes per-dimension integers into a label.

    Raises:
        LabelingError: If u has the wrong width or is out of range.
    """
    widths = _widths(h)
    u = np.asarray(u, dtype=np.int64)
    h = np.asarray(h, dtype=np.int64)
    if u.shape[-1] != len(widths):
        raise LabelingError(f"Index width {u.shape[-1]} does not match n={len(widths)}")
    if np.any(u < 0) or np.any(u >= h):
        raise LabelingError(f"Integer out of range for h={h.tolist()}")
    gray = u ^ (u >> 1)
    blocks = [unpack_bits(gray[..., i], w) for i, w in enumerate(widths) if w]
    if not blocks:
        return np.zeros(u.shape[:-1] + (0,), dtype=np.uint8)
    return np.concatenate(blocks, axis=-1)


class GrayLabeling:
    """Per-dimension BRGC labeling of a constellation with diagonal h.

    Attributes:
        kind: Always "gray".
    """

    kind = "gray"

    def __init__(self, h: np.ndarray) -> None:
        self._h = np.asarray(h, dtype=np.int64)
        self._width = sum(_widths(self._h))

    @property
    def h(self) -> np.ndarray:
        """Per-dimension sizes."""
        return self._h

    @property
    def width(self) -> int:
        """Label width m = Σ log₂ h_i."""
        return self._width

    @property
    def level_widths(self) -> tuple[int, ...]:
        """Gray labels have no coded blocks."""
        return ()

    def map(self, bits: np.ndarray) -> np.ndarray:
        """f_BRGC."""
        return brgc_to_int(bits, self._h)

    def demap(self, u: np.ndarray) -> np.ndarray:
        """f_BRGC⁻¹."""
        return int_to_brgc(u, self._h)
