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

"""Seeded bit interleaver for BICM frames."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from vcmod.exceptions import CodeError


@dataclass(frozen=True)
class Interleaver:
    """A uniform random permutation of a frame.

    Position i of the interleaved frame holds input position
    ``permutation[i]``.

    Attributes:
        seed: Seed of the permutation.
        length: Frame length.
    """

    seed: int
    length: int

    @cached_property
    def permutation(self) -> np.ndarray:
        """The permutation, identical for equal seeds and lengths."""
        perm = np.random.default_rng(self.seed).permutation(self.length)
        perm.setflags(write=False)
        return perm

    def check(self, values: np.ndarray) -> np.ndarray:
        """Returns values after checking the frame length."""
        values = np.asarray(values)
        if values.shape[0] != self.length:
            raise CodeError(
                f"Interleaver of length {self.length} got {values.shape[0]} values"
            )
        return values


def interleave(interleaver: Interleaver, values: np.ndarray) -> np.ndarray:
    """Permutes a frame (first axis)."""
    return interleaver.check(values)[interleaver.permutation]


def deinterleave(interleaver: Interleaver, values: np.ndarray) -> np.ndarray:
    """Inverts interleave."""
    values = interleaver.check(values)
    out = np.empty_like(values)
    out[interleaver.permutation] = values
    return out
