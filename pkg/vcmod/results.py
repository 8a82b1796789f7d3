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

"""Public API return types for vcmod.

This module defines the dataclasses returned by public operations: energy
estimates, decoder outputs, pipeline receive results, mutual-information
estimates, BER records and validation reports.

All dataclasses are frozen (immutable) to prevent accidental mutation of
return values.

Example:
    Using result types:
        ```python
        from vcmod.vc import average_energy, catalog_build

        estimate = average_energy(catalog_build("example-1"), mode="exact")
        print(estimate.value, estimate.stderr)
        ```

Note:
    Only public API return types belong in this module. Domain types (like
    Lattice, VoronoiConstellation or LlrFrame) stay next to the code that
    builds them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np


@dataclass(frozen=True)
class EnergyEstimate:
    """Average symbol energy of a constellation.

    Attributes:
        value: Average energy Es (exact sum or Monte-Carlo mean).
        stderr: Standard error of the Monte-Carlo mean; 0.0 in exact mode.
        trials: Number of points summed or sampled.
        mode: "exact" or "monte-carlo".
    """

    value: float
    stderr: float
    trials: int
    mode: str


@dataclass(frozen=True)
class DecodeResult:
    """Output of a component decoder for one codeword.

    Attributes:
        info: Decoded information bits (uint8 array of length K).
        codeword: Hard decision on the full codeword (uint8 array of length N).
        converged: True when the final hard decision has zero syndrome.
        iterations: Number of decoder iterations used.
    """

    info: np.ndarray
    codeword: np.ndarray
    converged: bool
    iterations: int


@dataclass(frozen=True)
class BicmReceiveResult:
    """Output of the BICM receiver for one frame.

    Attributes:
        info: Decoded information bits for the whole frame.
        prefec_ber: Hard-decision BER of the channel LLRs against the
            transmitted coded bits, or None when no ground truth was given.
        postfec_ber: BER of the decoded information bits, or None when no
            ground truth was given.
        iterations: Decoder iterations per codeword in the frame.
        converged: Convergence flag per codeword in the frame.
    """

    info: np.ndarray
    prefec_ber: float | None
    postfec_ber: float | None
    iterations: tuple[int, ...]
    converged: tuple[bool, ...]


@dataclass(frozen=True)
class MlcmReceiveResult:
    """Output of the multistage MLCM receiver for one block.

    Attributes:
        info: Decoded information bits (coded levels first, then uncoded).
        level_errors: Information bit errors per coded level followed by the
            uncoded bit errors (empty when no ground truth was given).
        level_bits: Information bits per coded level followed by the uncoded
            bit count.
        prefec_errors: Hard-decision coded bit errors per coded level.
        total_ber: Total information BER, or None without ground truth.
    """

    info: np.ndarray
    level_errors: tuple[int, ...]
    level_bits: tuple[int, ...]
    prefec_errors: tuple[int, ...]
    total_ber: float | None

    @property
    def level_bers(self) -> tuple[float, ...]:
        """BER per coded level followed by the uncoded BER."""
        return tuple(
            e / b if b else 0.0
            for e, b in zip(self.level_errors, self.level_bits, strict=True)
        )


@dataclass(frozen=True)
class LevelMi:
    """Mutual information carried by one block of label bits.

    Attributes:
        bits: Label bit positions (0-based) forming the block.
        conditioned_on: Label bit positions known to the receiver.
        mi: Estimated conditional mutual information in bits.
        stderr: Standard error of the Monte-Carlo estimate.
    """

    bits: tuple[int, ...]
    conditioned_on: tuple[int, ...]
    mi: float
    stderr: float

    @property
    def per_bit(self) -> float:
        """Mutual information divided by the block width."""
        return self.mi / len(self.bits)


@dataclass(frozen=True)
class MiResult:
    """Per-level mutual information at one SNR.

    Attributes:
        snr_db: Signal-to-noise ratio Es/σ²_tot in dB.
        scheme: Conditioning scheme ("bicm", "mlcm" or "chain").
        levels: Per-block estimates in label order.
        full_mi: Estimate of I(Y;X) from the same samples.
        full_stderr: Standard error of full_mi.
        samples: Number of Monte-Carlo samples.
    """

    snr_db: float
    scheme: str
    levels: tuple[LevelMi, ...]
    full_mi: float
    full_stderr: float
    samples: int

    @property
    def total(self) -> float:
        """Sum of the per-level estimates."""
        return float(sum(level.mi for level in self.levels))


@dataclass(frozen=True)
class BerRecord:
    """One measured BER point.

    Attributes:
        scheme: Scheme identifier.
        snr_db: Signal-to-noise ratio Es/σ²_tot in dB.
        bits: Information bits simulated.
        errors: Information bit errors counted.
        prefec_ber: Hard-decision channel BER (equals the BER when uncoded).
        postfec_ber: Information BER after decoding.
        level_bers: Per-level BERs (MLCM only, coded levels then uncoded).
        seed: Seed of the random stream used for this point.
        seconds: Wall time spent on this point.
    """

    scheme: str
    snr_db: float
    bits: int
    errors: int
    prefec_ber: float
    postfec_ber: float
    level_bers: tuple[float, ...] = field(default_factory=tuple)
    seed: int = 0
    seconds: float = 0.0

    @property
    def ber(self) -> float:
        """Information BER, errors / bits."""
        return self.errors / self.bits if self.bits else 0.0

    @property
    def stderr(self) -> float:
        """Binomial standard error of the BER estimate."""
        if not self.bits:
            return 0.0
        p = self.ber
        return math.sqrt(p * (1.0 - p) / self.bits)


@dataclass(frozen=True)
class RoundTripResult:
    """Outcome of a mapping and indexing bijection check.

    Attributes:
        constellation: Constellation name.
        mapping: Mapping kind ("gray", "sp" or "hybrid").
        samples: Number of labels checked.
        exhaustive: True when every label of the constellation was checked.
        failures: Number of labels whose round trip did not return them.
    """

    constellation: str
    mapping: str
    samples: int
    exhaustive: bool
    failures: int


@dataclass(frozen=True)
class ValidationResult:
    """Result from validating an experiment configuration.

    Attributes:
        status: Validation status ("valid" or "invalid").
        errors: List of error messages (empty if valid).
        warnings: List of warning messages.
        config_path: String path to the validated file.
    """

    status: str
    errors: list[str]
    warnings: list[str]
    config_path: str
