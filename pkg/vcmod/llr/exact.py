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

"""Exhaustive max-log LLRs.

``exact_maxlog_llr`` searches every constellation point and serves as the
reference for the ball and multilevel engines. ``qam_exact_llr`` uses the
separability of Gray-labelled PAM products: each dimension is searched on
its own line of h_i points, which gives the same values as the full search.
"""

from __future__ import annotations

import numpy as np

from vcmod.exceptions import LabelingError, UnsupportedError
from vcmod.labeling import Labeling, int_to_brgc
from vcmod.llr.frame import LlrFrame, check_sigma2, chunks, maxlog
from vcmod.vc import (
    MAX_EXACT_POINTS,
    VoronoiConstellation,
    enumerate_points,
    index_grid,
)


def _subset_minima(
    dist: np.ndarray, labels: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Per-bit minima of dist (..., P) over points with bit 0 and bit 1."""
    is_one = labels.astype(bool)
    d = dist[..., :, None]
    d0 = np.where(is_one, np.inf, d).min(axis=-2)
    d1 = np.where(is_one, d, np.inf).min(axis=-2)
    return d0, d1


def exact_maxlog_llr(
    constellation: VoronoiConstellation,
    labeling: Labeling,
    y: np.ndarray,
    sigma2: float,
    given: np.ndarray | None = None,
) -> LlrFrame:
    """Exhaustive max-log LLRs of every label bit.

    Args:
        constellation: Constellation with M <= 2²⁰ points.
        labeling: Labeling of the constellation.
        y: Received points (N, n).
        sigma2: Noise variance per two dimensions.
        given: Optional known leading label bits (N, g); only points whose
            first g bits match take part in the search.

    Returns:
        Frame with values of shape (N, m).

    Raises:
        UnsupportedError: If M exceeds 2²⁰.

    """
    sigma2 = check_sigma2(sigma2)
    if constellation.M > MAX_EXACT_POINTS:
        raise UnsupportedError(
            f"Exhaustive LLRs are limited to {MAX_EXACT_POINTS} points, "
            f"{constellation.name} has {constellation.M}"
        )
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    points = enumerate_points(constellation)
    labels = labeling.demap(index_grid(constellation.h))
    if given is not None:
        given = np.atleast_2d(np.asarray(given, dtype=np.uint8))
        if given.shape[0] != y.shape[0] or given.shape[1] > labels.shape[1]:
            raise LabelingError(f"Known bits of shape {given.shape} do not fit")

    out = np.empty((y.shape[0], labels.shape[1]))
    for part in chunks(y.shape[0], points.shape[0] * labels.shape[1]):
        dist = np.sum((y[part, None, :] - points[None]) ** 2, axis=-1)
        if given is not None:
            g = given.shape[1]
            match = np.all(labels[None, :, :g] == given[part, None, :], axis=-1)
            dist = np.where(match, dist, np.inf)
        d0, d1 = _subset_minima(dist, labels)
        out[part] = maxlog(d0, d1, sigma2)
    return LlrFrame(out, sigma2)


def qam_exact_llr(
    h: np.ndarray,
    y: np.ndarray,
    sigma2: float,
    offset: np.ndarray | None = None,
) -> LlrFrame:
    """Exact max-log LLRs of a Gray-labelled PAM product.

    Args:
        h: PAM size per dimension (powers of 2; may differ, as in TDHQ).
        y: Received points (N, n).
        sigma2: Noise variance per two dimensions.
        offset: Offset a of the grid; defaults to (h − 1)/2.

    Returns:
        Frame with values of shape (N, Σ log₂ h_i), Gray blocks in
        dimension order.

    """
    sigma2 = check_sigma2(sigma2)
    h = np.asarray(h, dtype=np.int64)
    a = (h - 1) / 2.0 if offset is None else np.asarray(offset, dtype=np.float64)
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    blocks = []
    for i, size in enumerate(h.tolist()):
        if size == 1:
            continue
        line = np.arange(size) - a[i]
        labels = int_to_brgc(np.arange(size)[:, None], np.array([size]))
        dist = (y[:, i, None] - line[None, :]) ** 2
        d0, d1 = _subset_minima(dist, labels)
        blocks.append(maxlog(d0, d1, sigma2))
    values = np.concatenate(blocks, axis=-1) if blocks else np.zeros((len(y), 0))
    return LlrFrame(values, sigma2)
