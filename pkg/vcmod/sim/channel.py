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

"""AWGN channel and SNR bookkeeping.

SNR is Es/σ²_tot, where σ²_tot is the total noise variance of one
n-dimensional symbol. Each real dimension carries σ²_tot/n, and the LLR
formulas take the variance per two dimensions, σ² = 2σ²_tot/n.

Every SNR point of a sweep draws from its own Philox stream spawned from the
master seed, so points can run in any order or on any thread and still give
identical results.

Example:
    ```python
    import numpy as np
    from vcmod.sim import awgn, sigma2_per_2d, sigma2_total

    s2 = sigma2_total(es=10.0, snr_db=10.0)     # 1.0
    sigma2_per_2d(s2, n=8)                      # 0.25
    y = awgn(np.zeros((4, 8)), s2, np.random.default_rng(1))
    ```
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
import math
from typing import Any

import numpy as np

from vcmod.exceptions import ConfigError


def sigma2_total(es: float, snr_db: float) -> float:
    """Total noise variance per symbol for Es/σ²_tot = SNR."""
    if es <= 0:
        raise ConfigError(f"Symbol energy must be positive, got {es}")
    return es / 10 ** (snr_db / 10)


def snr_db_of(es: float, sigma2_tot: float) -> float:
    """Inverse of ``sigma2_total``."""
    if sigma2_tot <= 0:
        raise ConfigError(f"Noise variance must be positive, got {sigma2_tot}")
    return 10 * math.log10(es / sigma2_tot)


def sigma2_per_2d(sigma2_tot: float, n: int) -> float:
    """Noise variance per two real dimensions, 2σ²_tot/n."""
    return 2.0 * sigma2_tot / n


def awgn(x: np.ndarray, sigma2_tot: float, rng: np.random.Generator) -> np.ndarray:
    """Adds white Gaussian noise of total variance σ²_tot per symbol.

    Args:
        x: Transmitted symbols, shape (..., n).
        sigma2_tot: Total noise variance per n-dimensional symbol.
        rng: Random generator.

    Returns:
        Received symbols, same shape as x.

    Raises:
        ConfigError: If the variance is negative.

    """
    if sigma2_tot < 0:
        raise ConfigError(f"Noise variance must be non-negative, got {sigma2_tot}")
    x = np.asarray(x, dtype=np.float64)
    if sigma2_tot == 0:
        return x.copy()
    scale = math.sqrt(sigma2_tot / x.shape[-1])
    return x + rng.normal(0.0, scale, size=x.shape)


def snr_grid(spec: Sequence[float] | Mapping[str, Any] | float) -> tuple[float, ...]:
    """Expands an SNR grid given as a list, a scalar or ``{start, stop, step}``.

    The range form includes ``stop`` when it lies on the grid.

    Raises:
        ConfigError: If the range is malformed or the grid is empty.

    """
    if isinstance(spec, Mapping):
        try:
            start = float(spec["start"])
            stop = float(spec["stop"])
            step = float(spec.get("step", 1.0))
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError(
                f"SNR range needs numeric start, stop and step: {dict(spec)}"
            ) from err
        if step <= 0 or stop < start:
            raise ConfigError(
                f"SNR range must have step > 0 and stop >= start: {dict(spec)}"
            )
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [round(start + i * step, 10) for i in range(count)]
    elif isinstance(spec, int | float):
        values = [float(spec)]
    else:
        try:
            values = [float(v) for v in spec]
        except (TypeError, ValueError) as err:
            raise ConfigError(f"SNR grid must hold numbers: {spec!r}") from err
    if not values:
        raise ConfigError("SNR grid is empty")
    return tuple(values)


def snr_streams(seed: int, count: int) -> list[np.random.Generator]:
    """One independent Philox generator per SNR point, spawned from ``seed``."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


@dataclass(frozen=True)
class ChannelConfig:
    """SNR grid and master seed of a sweep.

    Attributes:
        snr_db: SNR points in dB.
        seed: Master seed of the per-point streams.
    """

    snr_db: tuple[float, ...]
    seed: int = 0

    @classmethod
    def from_config(
        cls, section: Sequence[float] | Mapping[str, Any], seed: int = 0
    ) -> ChannelConfig:
        """Builds the channel setup from an experiment's ``snr_db`` entry."""
        return cls(snr_grid(section), int(seed))

    def streams(self) -> list[np.random.Generator]:
        """Per-point random generators, in grid order."""
        return snr_streams(self.seed, len(self.snr_db))

    def noise(self, es: float, n: int) -> list[tuple[float, float]]:
        """(σ²_tot, σ² per 2D) for every grid point."""
        totals = [sigma2_total(es, snr) for snr in self.snr_db]
        return [(s, sigma2_per_2d(s, n)) for s in totals]
