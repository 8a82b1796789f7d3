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

"""LLR frames, saturation and the plain-text LLR dump format.

LLRs follow one sign convention everywhere: a positive value means bit 0 is
more likely. Values are max-log differences of squared distances divided by
σ², the noise variance per two dimensions, and are clamped to ±1000 before
they reach a decoder.

Dump format: one symbol per line, its LLRs separated by single spaces and
written with 6 decimals.

Example:
    ```python
    from pathlib import Path
    import numpy as np
    from vcmod.llr import read_llr_frames, write_llr_frames

    write_llr_frames(Path("llr.txt"), np.array([[1.5, -2.0]]))
    read_llr_frames(Path("llr.txt"))     # array([[ 1.5, -2. ]])
    ```
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from vcmod.exceptions import ConfigError

LLR_CLAMP = 1000.0
LLR_DECIMALS = 6

# Largest number of float64 scratch entries held by one LLR chunk.
CHUNK_BUDGET = 2**22


@dataclass(frozen=True, eq=False)
class LlrFrame:
    """LLRs of a batch of received symbols.

    Attributes:
        values: Float array (..., width); positive favours bit 0.
        sigma2: Noise variance per two dimensions used for scaling.
        radius2: Squared ball radius R², when a ball engine produced them.
        default: Default distance r for empty ball subsets, when used.
    """

    values: np.ndarray = field(repr=False)
    sigma2: float
    radius2: int | None = None
    default: float | None = None

    @property
    def width(self) -> int:
        """LLRs per symbol."""
        return int(self.values.shape[-1])

    def hard_bits(self) -> np.ndarray:
        """Hard decisions, 1 where the LLR is negative."""
        return (self.values < 0).astype(np.uint8)


def clamp_llr(values: np.ndarray) -> np.ndarray:
    """Saturates LLRs to ±1000."""
    return np.clip(values, -LLR_CLAMP, LLR_CLAMP)


def maxlog(d0: np.ndarray, d1: np.ndarray, sigma2: float) -> np.ndarray:
    """(min d over bit 1 − min d over bit 0)/σ², clamped."""
    return clamp_llr((d1 - d0) / sigma2)


def check_sigma2(sigma2: float) -> float:
    """Validates a noise variance.

    Raises:
        ConfigError: If σ² is not a positive finite number.
    """
    value = float(sigma2)
    if not np.isfinite(value) or value <= 0:
        raise ConfigError(f"Noise variance must be positive, got {sigma2}")
    return value


def chunks(total: int, per_item: int, budget: int = CHUNK_BUDGET) -> Iterator[slice]:
    """Splits ``total`` items into slices of about ``budget / per_item`` items."""
    size = max(1, budget // max(per_item, 1))
    for start in range(0, total, size):
        yield slice(start, min(start + size, total))


def write_llr_frames(path: Path, values: np.ndarray) -> None:
    """Writes LLRs, one symbol per line.

    Args:
        path: Output file; parent directories are created.
        values: Array (symbols, width) or a single frame (width,).

    """
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.atleast_2d(np.asarray(values, dtype=np.float64))
    np.savetxt(path, data, fmt=f"%.{LLR_DECIMALS}f", delimiter=" ")


def read_llr_frames(path: Path) -> np.ndarray:
    """Reads an LLR dump written by write_llr_frames.

    Raises:
        ConfigError: If the file is missing or not a rectangular float table.
    """
    return read_table(path, "LLR dump")


def read_table(path: Path, what: str) -> np.ndarray:
    """Reads a whitespace-separated float table with one row per line.

    Raises:
        ConfigError: If the file is missing, ragged or not numeric.
    """
    if not path.exists():
        raise ConfigError(f"{what} not found: {path}")
    try:
        data = np.loadtxt(path, dtype=np.float64, ndmin=2)
    except ValueError as err:
        raise ConfigError(f"Malformed {what} {path}: {err}") from err
    if not np.all(np.isfinite(data)):
        raise ConfigError(f"{what} {path} contains non-finite values")
    return data
