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

"""QAM, PAM products and time-domain hybrid QAM.

Benchmark formats are rectangular Voronoi constellations Zⁿ/diag(h): each
pair of dimensions carries one QAM symbol whose two PAM sizes are
2^⌈b/2⌉ and 2^⌊b/2⌋ for b bits. Time-domain hybrid QAM (TDHQ) mixes t₁
symbols of one QAM size with t₂ of another, giving β = (t₁b₁ + t₂b₂)/(t₁+t₂).
All constituents share the unit grid, so they have the same minimum
distance by construction.

Example:
    ```python
    from vcmod.vc import build_qam, build_tdhq

    qam = build_qam(6)          # 64-QAM, h = (8, 8)
    tdhq = build_tdhq(4, 4096, 4, 2048)
    tdhq.n, tdhq.beta           # (16, 11.5)
    ```
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from vcmod.exceptions import ConstellationError
from vcmod.lattices import from_generator
from vcmod.vc.constellation import QamConstellation

TDHQ_FORMATS: dict[str, tuple[int, int, int, int]] = {
    "TDHQ1": (4, 512, 4, 1024),
    "TDHQ2": (4, 4096, 4, 2048),
}


def qam_sizes(bits: int) -> tuple[int, int]:
    """PAM sizes of a 2^bits-point QAM (square for even bits)."""
    if bits < 1:
        raise ConstellationError(f"QAM needs at least one bit, got {bits}")
    return 2 ** ((bits + 1) // 2), 2 ** (bits // 2)


def build_pam_product(
    sizes: Sequence[int], name: str | None = None
) -> QamConstellation:
    """Builds the Gray PAM product with per-dimension sizes h.

    Raises:
        ConstellationError: If a size is not a power of 2 or is below 2.
    """
    h = np.asarray(sizes, dtype=np.int64)
    if np.any(h < 2) or np.any(h & (h - 1)):
        raise ConstellationError(f"PAM sizes must be powers of 2, got {h.tolist()}")
    gs = np.diag(h)
    shaping = from_generator(gs, base="diag(" + ",".join(map(str, h.tolist())) + ")")
    return QamConstellation(
        name or f"PAM{h.tolist()}", shaping, gs, (h.astype(np.float64) - 1) / 2
    )


def build_qam(bits: int) -> QamConstellation:
    """Builds 2^bits-QAM over two dimensions."""
    return build_pam_product(qam_sizes(bits), name=f"{2**bits}-QAM")


def _qam_bits(size: int) -> int:
    if size < 2 or size & (size - 1):
        raise ConstellationError(f"QAM size must be a power of 2, got {size}")
    return size.bit_length() - 1


def build_tdhq(
    t1: int, size1: int, t2: int, size2: int, name: str | None = None
) -> QamConstellation:
    """Builds a TDHQ block of t₁ size1-QAM and t₂ size2-QAM symbols.

    The block spans n = 2(t₁ + t₂) dimensions.

    Raises:
        ConstellationError: If a size is not a power of 2 or a count is not
            positive.
    """
    if t1 < 1 or t2 < 0:
        raise ConstellationError(f"Invalid TDHQ symbol counts ({t1}, {t2})")
    first = qam_sizes(_qam_bits(size1)) * t1
    second = qam_sizes(_qam_bits(size2)) * t2 if t2 else ()
    label = name or f"TDHQ({t1}x{size1}+{t2}x{size2})"
    return build_pam_product(first + second, name=label)
