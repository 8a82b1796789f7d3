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

"""Built-in LDPC codes.

``qc_ldpc_code`` builds an irregular repeat-accumulate code: the information
part of H is a quasi-cyclic array of Z x Z circulant permutations, every
information column block hitting ``column_weight`` check blocks, and the
parity part is the bit-level staircase used by DVB-S2, so encoding is a
running XOR. Check blocks are picked greedily by current degree and
circulant shifts are drawn so that no two circulants close a 4-cycle
(progressive edge growth on the base graph).

Named codes:

| Name | N | Rate |
| --- | --- | --- |
| ``hamming-7-4`` | 7 | 4/7 |
| ``qc-4000-1/2`` | 4000 | 1/2 |
| ``qc-4050-2/3`` | 4050 | 2/3 |
| ``qc-<num>/<den>[-<N>]`` | N (default 4000) | num/den |

Any other name is read as a path to an alist file.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import math
from pathlib import Path
import re

import numpy as np
import scipy.sparse as sp

from vcmod.exceptions import CodeError, ConfigError
from vcmod.fec.alist import load_parity
from vcmod.fec.ldpc import LdpcCode
from vcmod.logging import get_global_logger

DVB_S2_RATES: tuple[Fraction, ...] = tuple(
    Fraction(v)
    for v in (
        "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5", "5/6", "8/9", "9/10"
    )
)

DEFAULT_LENGTH = 4000
DEFAULT_COLUMN_WEIGHT = 3
_MIN_BLOCKS = 20
_MAX_SHIFT_TRIES = 1000

HAMMING_7_4 = np.array(
    [
        [1, 1, 0, 1, 1, 0, 0],
        [1, 0, 1, 1, 0, 1, 0],
        [0, 1, 1, 1, 0, 0, 1],
    ],
    dtype=np.uint8,
)

_QC_NAME = re.compile(r"^qc-(?:(\d+)-)?(\d+)/(\d+)(?:-(\d+))?$")


def base_graph_shape(
    rate: Fraction, length: int, column_weight: int
) -> tuple[int, int, int]:
    """Chooses (info blocks, check blocks, circulant size) for a code.

    The base graph has t·num information and t·(den − num) check blocks,
    with t the smallest multiplier giving at least ``column_weight + 1``
    check blocks and 20 blocks overall; larger t are tried until the
    length is an exact multiple of the block count.

    Raises:
        CodeError: If the rate is not in (0, 1) or the length is too short.
    """
    if not 0 < rate < 1:
        raise CodeError(f"LDPC rate must lie in (0, 1), got {rate}")
    num, den = rate.numerator, rate.denominator
    t_min = max(
        math.ceil((column_weight + 1) / (den - num)), math.ceil(_MIN_BLOCKS / den)
    )
    t = next(
        (t for t in range(t_min, t_min + 64) if length % (t * den) == 0), t_min
    )
    z = round(length / (t * den))
    if z < 2:
        raise CodeError(f"Length {length} is too short for rate {rate}")
    return t * num, t * (den - num), z


def _creates_four_cycle(
    base: dict[tuple[int, int], int], row: int, col: int, shift: int, z: int
) -> bool:
    for (r1, c1), s11 in base.items():
        if c1 != col or r1 == row:
            continue
        for (r2, c2), s22 in base.items():
            if r2 != row or c2 == col:
                continue
            s12 = base.get((r1, c2))
            if s12 is None:
                continue
            if (s11 - s12 + s22 - shift) % z == 0:
                return True
    return False


def qc_ldpc_code(
    rate: Fraction | str,
    length: int = DEFAULT_LENGTH,
    seed: int = 0,
    column_weight: int = DEFAULT_COLUMN_WEIGHT,
    name: str | None = None,
) -> LdpcCode:
    """Builds a quasi-cyclic repeat-accumulate LDPC code.

    Args:
        rate: Code rate num/den.
        length: Target codeword length.
        seed: Seed for check-block tie breaks and shift draws.
        column_weight: Degree of every information column.
        name: Display name.

    Returns:
        The code; N may round to the nearest multiple of the block count.

    Raises:
        CodeError: If no 4-cycle-free shift can be placed.

    """
    rate = Fraction(rate)
    kb, mb, z = base_graph_shape(rate, length, column_weight)
    rng = np.random.default_rng(seed)
    base: dict[tuple[int, int], int] = {}
    degree = np.zeros(mb, dtype=np.int64)

    for col in range(kb):
        for _ in range(column_weight):
            used = {r for (r, c) in base if c == col}
            free = [r for r in range(mb) if r not in used]
            low = min(degree[r] for r in free)
            choices = [r for r in free if degree[r] == low]
            row = int(choices[int(rng.integers(len(choices)))])
            for _ in range(_MAX_SHIFT_TRIES):
                shift = int(rng.integers(z))
                if not _creates_four_cycle(base, row, col, shift, z):
                    break
            else:
                raise CodeError(
                    f"No 4-cycle-free shift for block ({row}, {col}) with Z={z}"
                )
            base[(row, col)] = shift
            degree[row] += 1

    k, m = kb * z, mb * z
    rows, cols = [], []
    offsets = np.arange(z)
    for (r, c), s in base.items():
        rows.append(r * z + offsets)
        cols.append(c * z + (offsets + s) % z)
    stair = np.arange(m)
    rows += [stair, stair[1:]]
    cols += [k + stair, k + stair[:-1]]
    r_idx = np.concatenate(rows)
    c_idx = np.concatenate(cols)
    h = sp.csr_matrix(
        (np.ones(r_idx.size, dtype=np.uint8), (r_idx, c_idx)), shape=(m, k + m)
    )
    code = LdpcCode(name or f"qc-{k + m}-{rate}", h)
    get_global_logger().verbose(
        "LDPC",
        f"Built {code.name}: base graph {mb}x{kb} Z={z} N={code.N} K={code.K}",
    )
    return code


@lru_cache(maxsize=32)
def builtin_code(name: str) -> LdpcCode:
    """Returns a named code, building it on first use.

    Raises:
        ConfigError: If the name is neither a built-in code nor an existing
            alist file.
        CodeError: If an alist file is malformed.
    """
    if name == "hamming-7-4":
        return LdpcCode(name, HAMMING_7_4)
    match = _QC_NAME.match(name)
    if match:
        prefix_length, num, den, suffix_length = match.groups()
        length = int(prefix_length or suffix_length or DEFAULT_LENGTH)
        return qc_ldpc_code(Fraction(int(num), int(den)), length, name=name)
    path = Path(name)
    if path.suffix == ".alist" or path.exists():
        return load_parity(path)
    raise ConfigError(
        f"Unknown LDPC code: {name!r} (expected hamming-7-4, "
        "qc-<num>/<den>[-<N>], qc-<N>-<num>/<den> or an alist path)"
    )
