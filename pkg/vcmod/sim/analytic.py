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

"""Closed-form references and threshold read-outs.

``gray_qam_ber`` is the exact bit error rate of a Gray-labelled PAM product
(square QAM, TDHQ) with the nearest-point slicer on the unit grid. The
threshold helpers locate where a BER curve crosses the target 1.81×10⁻³ by
linear interpolation of log₁₀ BER between the bracketing SNR points.
"""

from __future__ import annotations

from collections.abc import Sequence
import math

import numpy as np
from scipy.special import erfc

from vcmod.exceptions import ConfigError
from vcmod.labeling import int_to_brgc
from vcmod.results import BerRecord
from vcmod.sim.channel import sigma2_total

BER_TARGET = 1.81e-3


def _cdf(z: np.ndarray) -> np.ndarray:
    return 0.5 * erfc(-z / math.sqrt(2.0))


def gray_pam_bit_errors(size: int, variance: float) -> np.ndarray:
    """Per-bit error probabilities of Gray-labelled ``size``-PAM.

    Points sit at consecutive integers and the slicer clips to the outer
    points, so the outer decision regions extend to infinity.

    Args:
        size: Number of PAM levels (power of 2).
        variance: Noise variance of the real dimension.

    Returns:
        Array of log₂(size) error probabilities, most significant bit first.

    Raises:
        ConfigError: If size is not a power of 2 or variance is not positive.

    """
    if size < 1 or size & (size - 1):
        raise ConfigError(f"PAM size must be a power of 2, got {size}")
    if variance <= 0:
        raise ConfigError(f"Noise variance must be positive, got {variance}")
    levels = np.arange(size)
    labels = int_to_brgc(levels[:, None], np.array([size]))
    lower = levels - 0.5
    upper = levels + 0.5
    lower[0], upper[-1] = -np.inf, np.inf
    sigma = math.sqrt(variance)
    sent = levels[:, None].astype(np.float64)
    p = _cdf((upper[None] - sent) / sigma) - _cdf((lower[None] - sent) / sigma)
    differ = labels[:, None, :] != labels[None, :, :]
    return np.einsum("ij,ijk->k", p, differ) / size


def gray_qam_ber(
    h: Sequence[int] | np.ndarray, snr_db: float, es: float | None = None
) -> float:
    """Exact BER of the Gray-labelled PAM product with sizes ``h``.

    Args:
        h: Per-dimension PAM sizes, e.g. (8, 8) for 64-QAM.
        snr_db: Es/σ²_tot in dB.
        es: Symbol energy; defaults to Σ (h_i² − 1)/12 of the centred grid.

    Returns:
        Average bit error probability over all label bits.

    """
    sizes = [int(v) for v in np.asarray(h).ravel()]
    if es is None:
        es = sum((v * v - 1) / 12 for v in sizes)
    variance = sigma2_total(es, snr_db) / len(sizes)
    per_bit = [gray_pam_bit_errors(v, variance) for v in sizes if v > 1]
    if not per_bit:
        return 0.0
    return float(np.concatenate(per_bit).mean())


def threshold_crossing(
    snr_db: Sequence[float], ber: Sequence[float], target: float = BER_TARGET
) -> float | None:
    """SNR at which a falling BER curve first crosses ``target``.

    Points with zero BER are ignored. Returns None when no pair of adjacent
    points brackets the target.
    """
    pairs = sorted(
        (float(s), float(b)) for s, b in zip(snr_db, ber, strict=True) if b > 0
    )
    log_target = math.log10(target)
    for (s0, b0), (s1, b1) in zip(pairs, pairs[1:], strict=False):
        if b0 >= target >= b1 and b0 != b1:
            t = (log_target - math.log10(b0)) / (math.log10(b1) - math.log10(b0))
            return s0 + t * (s1 - s0)
        if b0 == target:
            return s0
    if pairs and pairs[-1][1] == target:
        return pairs[-1][0]
    return None


def record_threshold(
    records: Sequence[BerRecord], target: float = BER_TARGET
) -> float | None:
    """Threshold SNR of a post-FEC BER curve."""
    return threshold_crossing(
        [r.snr_db for r in records], [r.postfec_ber for r in records], target
    )


def threshold_gap(
    reference: Sequence[BerRecord],
    candidate: Sequence[BerRecord],
    target: float = BER_TARGET,
) -> float | None:
    """Gain of ``candidate`` over ``reference`` in dB at the BER target.

    Positive values mean the candidate reaches the target at a lower SNR.
    None when either curve does not cross the target.
    """
    ref = record_threshold(reference, target)
    cand = record_threshold(candidate, target)
    if ref is None or cand is None:
        return None
    return ref - cand
