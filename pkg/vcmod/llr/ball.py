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

"""Euclidean-ball LLRs for BICM.

The ball around a received point y holds the integer points z with
‖z − ⌊y + a⌉‖² <= R² (R² a non-negative integer). Ball members are labelled
through the index map w and the constellation's labeling, without checking
whether they fall inside the constellation. For each bit the two minima of
‖y + a − z‖² are taken over members with that bit 0 and 1; an empty subset
contributes the default distance r > R².

Ball sizes for R² = 1 are 2n + 1; the defaults R² = 6, r = 20 (8D) and
R² = 2, r = 20 (16D and up) keep the ball at a few thousand points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
import math

import numpy as np

from vcmod.exceptions import ConfigError
from vcmod.labeling import GrayLabeling, Labeling
from vcmod.lattices import residue, round_half_up
from vcmod.llr.frame import LlrFrame, check_sigma2, chunks, maxlog
from vcmod.vc import VoronoiConstellation

DEFAULT_R = 20.0


def default_radius2(n: int) -> int:
    """R² used for BICM when none is configured: 6 up to 8D, else 2."""
    return 6 if n <= 8 else 2


@dataclass(frozen=True, eq=False)
class EuclideanBall:
    """Integer points around the rounded received point.

    Attributes:
        center: ⌊y + a⌉, integer array (..., n).
        radius2: Squared radius R².
        points: Members z, integer array (..., B, n) in lexicographic order
            of z − center.
    """

    center: np.ndarray = field(repr=False)
    radius2: int
    points: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        """Number of members B."""
        return int(self.points.shape[-2])


def check_radius2(radius2: int) -> int:
    """Validates R².

    Raises:
        ConfigError: If R² is negative or not an integer.
    """
    if int(radius2) != radius2 or radius2 < 0:
        raise ConfigError(f"R² must be a non-negative integer, got {radius2}")
    return int(radius2)


@lru_cache(maxsize=64)
def ball_offsets(n: int, radius2: int) -> np.ndarray:
    """All e ∈ Zⁿ with ‖e‖² <= R², lexicographically ordered.

    Built one coordinate at a time, keeping only prefixes whose partial norm
    stays within R².
    """
    radius2 = check_radius2(radius2)
    reach = math.isqrt(radius2)
    values = np.arange(-reach, reach + 1, dtype=np.int64)
    prefixes = np.zeros((1, 0), dtype=np.int64)
    norms = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        grown_norms = (norms[:, None] + values[None, :] ** 2).ravel()
        keep = grown_norms <= radius2
        grown = np.concatenate(
            [
                np.repeat(prefixes, len(values), axis=0),
                np.tile(values, len(prefixes))[:, None],
            ],
            axis=1,
        )
        prefixes, norms = grown[keep], grown_norms[keep]
    prefixes.setflags(write=False)
    return prefixes


def ball_enumerate(
    y: np.ndarray, a: np.ndarray | float, radius2: int
) -> EuclideanBall:
    """Enumerates the Euclidean ball around y.

    Args:
        y: Received point (n,) or batch (..., n).
        a: Constellation offset.
        radius2: Squared radius R² (non-negative integer).

    Returns:
        The ball; for R² = 1 it has 2n + 1 members.

    Raises:
        ConfigError: If R² is negative or not an integer.

    """
    y = np.asarray(y, dtype=np.float64)
    center = round_half_up(y + a).astype(np.int64)
    offsets = ball_offsets(y.shape[-1], check_radius2(radius2))
    return EuclideanBall(center, int(radius2), center[..., None, :] + offsets)


def bicm_ball_llr(
    constellation: VoronoiConstellation,
    y: np.ndarray,
    sigma2: float,
    radius2: int | None = None,
    default: float = DEFAULT_R,
    labeling: Labeling | None = None,
) -> LlrFrame:
    """Ball-approximated max-log LLRs of all m label bits.

    Args:
        constellation: The constellation.
        y: Received points (N, n).
        sigma2: Noise variance per two dimensions.
        radius2: R²; defaults to default_radius2(n).
        default: Distance r used for an empty subset; must exceed R².
        labeling: Labeling of the constellation; Gray when omitted.

    Returns:
        Frame with values of shape (N, m).

    Raises:
        ConfigError: If r <= R² or R² is invalid.

    """
    sigma2 = check_sigma2(sigma2)
    n = constellation.n
    r2 = check_radius2(default_radius2(n) if radius2 is None else radius2)
    if default <= r2:
        raise ConfigError(f"Default distance r={default} must exceed R²={r2}")
    labeling = labeling or GrayLabeling(constellation.h)
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    offsets = ball_offsets(n, r2)
    shifted = y + constellation.offset
    out = np.empty((y.shape[0], labeling.width))

    for part in chunks(y.shape[0], offsets.shape[0] * labeling.width):
        center = round_half_up(shifted[part]).astype(np.int64)
        members = center[:, None, :] + offsets[None]
        labels = labeling.demap(residue(members, constellation.gs)).astype(bool)
        dist = np.sum((shifted[part, None, :] - members) ** 2, axis=-1)[..., None]
        d0 = np.where(labels, np.inf, dist).min(axis=1)
        d1 = np.where(labels, dist, np.inf).min(axis=1)
        d0[np.isinf(d0)] = default
        d1[np.isinf(d1)] = default
        out[part] = maxlog(d0, d1, sigma2)
    return LlrFrame(out, sigma2, radius2=r2, default=float(default))
