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

"""Component codes for coded modulation levels.

Every level of a coded modulation scheme is served by a ComponentCode: an
LDPC code, a frozen level (rate 0, all-zero bits known to the receiver) or
an uncoded level (rate 1, hard decisions).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
import re
from typing import Protocol

import numpy as np

from vcmod.exceptions import CodeError
from vcmod.fec.construct import builtin_code
from vcmod.fec.ldpc import DEFAULT_MAX_ITER
from vcmod.results import DecodeResult

_RATE = re.compile(r"^\d+/\d+$")


class ComponentCode(Protocol):
    """Encoder/decoder pair of one level."""

    name: str

    @property
    def N(self) -> int:
        """Codeword length."""
        ...

    @property
    def K(self) -> int:
        """Information length."""
        ...

    @property
    def rate(self) -> Fraction:
        """K/N."""
        ...

    def encode(self, info: np.ndarray) -> np.ndarray:
        """Encodes K bits into N bits."""
        ...

    def decode(self, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER) -> DecodeResult:
        """Decodes N LLRs."""
        ...


class _TrivialLevel(ABC):
    """Shared length handling of the frozen and uncoded levels."""

    def __init__(self, name: str, length: int) -> None:
        if length <= 0:
            raise CodeError(f"Level length must be positive, got {length}")
        self.name = name
        self._length = length

    @property
    def N(self) -> int:
        """Codeword length."""
        return self._length

    @property
    def rate(self) -> Fraction:
        """K/N."""
        return Fraction(self.K, self.N)

    @property
    @abstractmethod
    def K(self) -> int:
        """Information length."""

    @abstractmethod
    def encode(self, info: np.ndarray) -> np.ndarray:
        """Encodes K bits into N bits."""

    @abstractmethod
    def decode(self, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER) -> DecodeResult:
        """Decodes N LLRs."""

    def _check(self, values: np.ndarray, size: int) -> np.ndarray:
        values = np.asarray(values).ravel()
        if values.size != size:
            raise CodeError(f"{self.name}: expected {size} values, got {values.size}")
        return values


class FrozenLevel(_TrivialLevel):
    """Rate-0 level: every bit is 0 and known at the receiver."""

    def __init__(self, length: int) -> None:
        super().__init__("frozen", length)

    @property
    def K(self) -> int:
        """No information bits."""
        return 0

    def encode(self, info: np.ndarray) -> np.ndarray:
        """All-zero codeword."""
        self._check(info, 0)
        return np.zeros(self.N, dtype=np.uint8)

    def decode(self, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER) -> DecodeResult:
        """Returns the all-zero codeword regardless of the LLRs."""
        self._check(llr, self.N)
        zeros = np.zeros(self.N, dtype=np.uint8)
        return DecodeResult(np.zeros(0, dtype=np.uint8), zeros, True, 0)


class UncodedLevel(_TrivialLevel):
    """Rate-1 level: bits are sent as they are and sliced at the receiver."""

    def __init__(self, length: int) -> None:
        super().__init__("uncoded", length)

    @property
    def K(self) -> int:
        """All bits carry information."""
        return self.N

    def encode(self, info: np.ndarray) -> np.ndarray:
        """Identity."""
        return self._check(info, self.N).astype(np.uint8)

    def decode(self, llr: np.ndarray, max_iter: int = DEFAULT_MAX_ITER) -> DecodeResult:
        """Hard decisions."""
        hard = (self._check(llr, self.N) < 0).astype(np.uint8)
        return DecodeResult(hard.copy(), hard, True, 0)


def build_component(spec: str, length: int) -> ComponentCode:
    """Builds a level code from its configuration value.

    Args:
        spec: "frozen" or "0", "uncoded" or "1", a rate "num/den" (built-in
            quasi-cyclic code of the given length), or any name accepted by
            builtin_code.
        length: Codeword length for frozen, uncoded and rate specs.

    Returns:
        The component code.

    Raises:
        ConfigError: If the name is unknown.
        CodeError: If the code cannot be built.

    """
    spec = spec.strip()
    if spec in ("frozen", "0"):
        return FrozenLevel(length)
    if spec in ("uncoded", "1"):
        return UncodedLevel(length)
    if _RATE.match(spec):
        return builtin_code(f"qc-{spec}-{length}")
    return builtin_code(spec)
