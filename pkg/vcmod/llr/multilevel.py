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

"""Per-level LLRs for multistage MLCM decoding.

Level i of a set-partitioning chain: for every representative ĉ_i of
Λ^{i−1}/Λ^i the point y + a is quantized to the shifted lattice
Λ^i + Σ_{t<i} ĉ_t + ĉ_i, and each of the k_i bits takes the max-log
difference of the best distances over representatives labelled 0 and 1.
Only |Λ^{i−1}/Λ^i| quantizations are needed per symbol.

Level i of a hybrid chain uses a scaled ball instead: the members are
z = z₀ + 2^{p_{i−1}}·e with ‖e‖² <= R², where z₀ is the nearest point of
2^{p_{i−1}}Zⁿ + Σ_{t<i} ĉ_t to y + a. For unit-step chains R² = 1 gives the
exact conditional LLR and both subsets are never empty.

Both engines ignore the shaping boundary, except that QAM constellations
drop ball members outside the box.
"""

from __future__ import annotations

import numpy as np

from vcmod.exceptions import ConfigError, LabelingError
from vcmod.labeling import HybridLabeling, SetPartitionLabeling
from vcmod.lattices import round_half_up
from vcmod.llr.ball import DEFAULT_R, ball_offsets, check_radius2
from vcmod.llr.frame import LlrFrame, check_sigma2, chunks, maxlog
from vcmod.vc import QamConstellation, VoronoiConstellation


def _previous(coset: np.ndarray | None, y: np.ndarray) -> np.ndarray:
    if coset is None:
        return np.zeros(y.shape, dtype=np.int64)
    return np.broadcast_to(np.asarray(coset, dtype=np.int64), y.shape)


def _check_level(level: int, count: int) -> None:
    if not 0 <= level < count:
        raise LabelingError(f"Level {level} out of range for {count} coded levels")


def mlcm_sp_llr(
    constellation: VoronoiConstellation,
    labeling: SetPartitionLabeling,
    level: int,
    y: np.ndarray,
    sigma2: float,
    coset: np.ndarray | None = None,
) -> LlrFrame:
    """LLRs of coded block b_i for a set-partitioning chain.

    Args:
        constellation: The constellation (supplies the offset a).
        labeling: SP labeling with its partition chain.
        level: 0-based level index i − 1.
        y: Received points (N, n).
        sigma2: Noise variance per two dimensions.
        coset: Σ_{t<i} ĉ_t from the previous stages, (N, n) or (n,).

    Returns:
        Frame with values of shape (N, k_i).

    Raises:
        LabelingError: If the level is out of range.

    """
    sigma2 = check_sigma2(sigma2)
    _check_level(level, len(labeling.level_widths))
    table = labeling.chain.tables[level]
    child = labeling.chain.lattices[level + 1]
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    target = y + constellation.offset
    prev = _previous(coset, y)

    dist = np.empty((y.shape[0], table.size))
    for j, rep in enumerate(table.representatives):
        shift = prev + rep
        z = child.quantize(target - shift) + shift
        dist[:, j] = np.sum((target - z) ** 2, axis=-1)
    is_one = table.labels.astype(bool)[None]
    d0 = np.where(is_one, np.inf, dist[..., None]).min(axis=1)
    d1 = np.where(is_one, dist[..., None], np.inf).min(axis=1)
    return LlrFrame(maxlog(d0, d1, sigma2), sigma2)


def mlcm_hybrid_llr(
    constellation: VoronoiConstellation,
    labeling: HybridLabeling,
    level: int,
    y: np.ndarray,
    sigma2: float,
    coset: np.ndarray | None = None,
    radius2: int = 1,
    default: float = DEFAULT_R,
) -> LlrFrame:
    """LLRs of coded block b_i for a hybrid chain by scaled-ball search.

    Args:
        constellation: The constellation.
        labeling: Hybrid labeling.
        level: 0-based level index i − 1.
        y: Received points (N, n).
        sigma2: Noise variance per two dimensions.
        coset: Σ_{t<i} ĉ_t from the previous stages.
        radius2: R² of the unscaled ball (>= 1).
        default: Distance r for an empty subset, in units of 4^{p_{i−1}}.

    Returns:
        Frame with values of shape (N, n·(p_i − p_{i−1})).

    Raises:
        ConfigError: If R² is invalid.
        LabelingError: If the level is out of range.

    """
    sigma2 = check_sigma2(sigma2)
    _check_level(level, len(labeling.level_widths))
    r2 = check_radius2(radius2)
    if r2 < 1:
        raise ConfigError(f"Hybrid LLRs need R² >= 1, got {r2}")
    step = 2 ** labeling.chain.lower[level]
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    target = y + constellation.offset
    prev = _previous(coset, y)
    offsets = step * ball_offsets(constellation.n, r2)
    width = labeling.level_widths[level]
    floor = float(default) * step * step
    out = np.empty((y.shape[0], width))

    for part in chunks(y.shape[0], offsets.shape[0] * width):
        base = step * round_half_up((target[part] - prev[part]) / step)
        center = base.astype(np.int64) + prev[part]
        members = center[:, None, :] + offsets[None]
        labels = labeling.level_bits(level, members, prev[part, None, :])
        dist = np.sum((target[part, None, :] - members) ** 2, axis=-1)
        if isinstance(constellation, QamConstellation):
            inside = np.all((members >= 0) & (members < constellation.h), axis=-1)
            dist = np.where(inside, dist, np.inf)
        is_one = labels.astype(bool)
        d0 = np.where(is_one, np.inf, dist[..., None]).min(axis=1)
        d1 = np.where(is_one, dist[..., None], np.inf).min(axis=1)
        d0[np.isinf(d0)] = floor
        d1[np.isinf(d1)] = floor
        out[part] = maxlog(d0, d1, sigma2)
    return LlrFrame(out, sigma2, radius2=r2, default=float(default))
