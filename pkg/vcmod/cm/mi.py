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

"""Per-level mutual information of enumerable constellations.

Estimates are Gauss Monte-Carlo averages over uniformly drawn points and
AWGN at SNR = Es/σ²_tot. For a block S of label bits and conditioning
bits C,

    I(Y; B_S | B_C) = |S| + E[log₂ Σ_{S∪C} p(y|x) − log₂ Σ_C p(y|x)]

where the sums run over points sharing the transmitted point's bits on
S ∪ C and on C respectively.

Schemes:
    bicm: every bit on its own, C empty; the sum is the BICM capacity.
    mlcm: coded levels by the chain rule, then all uncoded bits as one
        block conditioned on every coded level.
    chain: bit by bit chain rule; the sum equals I(Y;X).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import logsumexp

from vcmod.exceptions import ConfigError, UnsupportedError
from vcmod.labeling import Labeling, level_offsets, pack_bits
from vcmod.logging import get_global_logger
from vcmod.results import LevelMi, MiResult
from vcmod.vc import VoronoiConstellation, average_energy, enumerate_points, index_grid

MI_SCHEMES = ("bicm", "mlcm", "chain")
MAX_MI_POINTS = 2**16
DEFAULT_MI_SAMPLES = 100_000

_CHUNK_BUDGET = 2**22


def mi_blocks(
    labeling: Labeling, scheme: str
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(bits, conditioned_on) pairs of a decomposition.

    Raises:
        ConfigError: If the scheme is unknown.
    """
    m = labeling.width
    if scheme == "bicm":
        return [((k,), ()) for k in range(m)]
    if scheme == "chain":
        return [((k,), tuple(range(k))) for k in range(m)]
    if scheme != "mlcm":
        raise ConfigError(
            f"Unknown MI scheme: {scheme!r} (expected {', '.join(MI_SCHEMES)})"
        )
    widths = labeling.level_widths
    blocks = []
    for start, k in zip(level_offsets(widths) if widths else (), widths, strict=True):
        blocks.append((tuple(range(start, start + k)), tuple(range(start))))
    coded = sum(widths)
    if coded < m:
        blocks.append((tuple(range(coded, m)), tuple(range(coded))))
    return blocks


def _keys(labels: np.ndarray, positions: tuple[int, ...]) -> np.ndarray:
    if not positions:
        return np.zeros(labels.shape[0], dtype=np.int64)
    return pack_bits(labels[:, list(positions)])


def mi_bit_levels(
    constellation: VoronoiConstellation,
    labeling: Labeling,
    snr_db: float,
    scheme: str = "mlcm",
    samples: int = DEFAULT_MI_SAMPLES,
    rng: np.random.Generator | None = None,
) -> MiResult:
    """Estimates per-level conditional MIs at one SNR.

    Args:
        constellation: Constellation with at most 2¹⁶ points.
        labeling: Its labeling.
        snr_db: Es/σ²_tot in dB.
        scheme: "bicm", "mlcm" or "chain".
        samples: Monte-Carlo samples.
        rng: Random generator (seed 0 when omitted).

    Returns:
        Per-level estimates with standard errors and the full I(Y;X).

    Raises:
        UnsupportedError: If the constellation has more than 2¹⁶ points.
        ConfigError: If the scheme is unknown.

    """
    if constellation.M > MAX_MI_POINTS:
        raise UnsupportedError(
            f"MI estimation is limited to {MAX_MI_POINTS} points, "
            f"{constellation.name} has {constellation.M}"
        )
    blocks = mi_blocks(labeling, scheme)
    rng = rng if rng is not None else np.random.default_rng(0)
    points = enumerate_points(constellation)
    labels = labeling.demap(index_grid(constellation.h))
    es = average_energy(constellation, mode="exact").value
    variance = es / 10 ** (snr_db / 10) / constellation.n

    sent = rng.integers(0, constellation.M, size=samples)
    noise = rng.normal(0.0, math.sqrt(variance), size=(samples, points.shape[1]))
    y = points[sent] + noise

    keyed = [
        (_keys(labels, cond), _keys(labels, tuple(sorted(bits + cond))), len(bits))
        for bits, cond in blocks
    ]
    terms = np.zeros((len(blocks), samples))
    full = np.zeros(samples)
    scale = 1.0 / math.log(2)
    step = max(1, _CHUNK_BUDGET // constellation.M)
    for start in range(0, samples, step):
        part = slice(start, min(start + step, samples))
        ll = -np.sum((y[part, None, :] - points[None]) ** 2, axis=-1) / (2 * variance)
        idx = sent[part]
        everything = logsumexp(ll, axis=1)
        own = ll[np.arange(ll.shape[0]), idx]
        full[part] = constellation.m + scale * (own - everything)
        for b, (cond_key, joint_key, width) in enumerate(keyed):
            joint = logsumexp(
                np.where(joint_key[None] == joint_key[idx, None], ll, -np.inf), axis=1
            )
            given = logsumexp(
                np.where(cond_key[None] == cond_key[idx, None], ll, -np.inf), axis=1
            )
            terms[b, part] = width + scale * (joint - given)

    root = math.sqrt(samples)
    levels = tuple(
        LevelMi(bits, cond, float(t.mean()), float(t.std(ddof=1) / root))
        for (bits, cond), t in zip(blocks, terms, strict=True)
    )
    result = MiResult(
        float(snr_db),
        scheme,
        levels,
        float(full.mean()),
        float(full.std(ddof=1) / root),
        samples,
    )
    get_global_logger().verbose(
        "MI",
        f"{constellation.name} {labeling.kind}/{scheme} at {snr_db:.2f} dB: "
        f"levels={[round(level.mi, 4) for level in levels]} "
        f"I(Y;X)={result.full_mi:.4f}",
    )
    return result
