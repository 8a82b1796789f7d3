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

"""Builds labelings from their configuration names and checks them end to end."""

from __future__ import annotations

import numpy as np

from vcmod.exceptions import ConfigError
from vcmod.labeling.base import Labeling, unpack_bits
from vcmod.labeling.gray import GrayLabeling
from vcmod.labeling.hybrid import HybridLabeling, build_hybrid_chain
from vcmod.labeling.set_partition import SetPartitionLabeling
from vcmod.lattices import build_partition_chain
from vcmod.logging import get_global_logger
from vcmod.results import RoundTripResult
from vcmod.vc import MAX_EXACT_POINTS, VoronoiConstellation

MAPPINGS = ("gray", "sp", "hybrid")

DEFAULT_CHAINS = {"sp": "checkerboard-n{n}", "hybrid": "hybrid-p1"}


def build_labeling(
    constellation: VoronoiConstellation,
    kind: str,
    chain: str | None = None,
) -> Labeling:
    """Builds a labeling of ``constellation``.

    Args:
        constellation: The constellation to label.
        kind: "gray", "sp" or "hybrid".
        chain: Partition chain name for "sp" (``table-IV-n8`` ...) or
            hybrid chain name for "hybrid" (``hybrid-p1`` ...). Defaults to
            the checkerboard chain Zⁿ/Dₙ/2Zⁿ and ``hybrid-p1``.

    Returns:
        The labeling.

    Raises:
        ConfigError: If the kind or chain name is unknown.
        LabelingError: If the chain does not fit the constellation.

    """
    if kind not in MAPPINGS:
        raise ConfigError(
            f"Unknown mapping: {kind!r} (expected one of {', '.join(MAPPINGS)})"
        )
    if kind == "gray":
        return GrayLabeling(constellation.h)

    name = chain or DEFAULT_CHAINS[kind].format(n=constellation.n)
    get_global_logger().verbose(
        "LABEL", f"{kind} labeling of {constellation.name} on chain {name}"
    )
    if kind == "sp":
        return SetPartitionLabeling(constellation, build_partition_chain(name))
    return HybridLabeling(constellation, build_hybrid_chain(name, constellation.n))


def check_roundtrip(
    constellation: VoronoiConstellation,
    labeling: Labeling,
    samples: int | None = None,
    rng: np.random.Generator | None = None,
    batch: int = 1 << 16,
) -> RoundTripResult:
    """Checks demap(decode(encode(map(b)))) = b over labels.

    Every label is checked when ``samples`` is None and M <= 2²⁰, or when
    ``samples`` is at least M; otherwise ``samples`` uniform labels are drawn.

    Args:
        constellation: The constellation.
        labeling: Its labeling.
        samples: Number of random labels, or None for exhaustive.
        rng: Random generator for sampled checks (seed 0 when omitted).
        batch: Labels per batch.

    Returns:
        Counts of checked labels and failures.

    """
    m = constellation.m
    exhaustive = (samples is None and constellation.M <= MAX_EXACT_POINTS) or (
        samples is not None and m < 63 and samples >= constellation.M
    )
    total = constellation.M if exhaustive else int(samples or 100_000)
    rng = rng if rng is not None else np.random.default_rng(0)
    failures = 0
    for start in range(0, total, batch):
        count = min(batch, total - start)
        if exhaustive:
            bits = unpack_bits(np.arange(start, start + count), m)
        else:
            bits = rng.integers(0, 2, size=(count, m), dtype=np.uint8)
        u = labeling.map(bits)
        u_back = constellation.decode(constellation.encode(u))
        back = labeling.demap(u_back)
        bad = np.any(back != bits, axis=-1) | np.any(u_back != u, axis=-1)
        failures += int(np.count_nonzero(bad))
    result = RoundTripResult(
        constellation.name, labeling.kind, total, exhaustive, failures
    )
    get_global_logger().verbose(
        "LABEL",
        f"{constellation.name} {labeling.kind} round trip: "
        f"{failures} failure(s) in {total} label(s)"
        + (" (exhaustive)" if exhaustive else ""),
    )
    return result
