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

"""Named constellations.

The Voronoi catalog holds ten VCs over E8, BW16 and the Leech lattice, plus
two small auxiliary VCs used in tests and examples. Every build checks M and
β against its row.

| Name | Shaping lattice | m | β |
| --- | --- | --- | --- |
| E8-24 | 8E8 | 24 | 6 |
| E8-32 | 16E8 | 32 | 8 |
| E8-40 | 32E8 | 40 | 10 |
| E8-48 | 64E8 | 48 | 12 |
| L16-76 | 16BW16 | 76 | 9.5 |
| L16-92 | 32BW16 | 92 | 11.5 |
| L24-72 | 2Leech24R24 | 72 | 6 |
| L24-96 | 4Leech24R24 | 96 | 8 |
| L24-120 | 8Leech24R24 | 120 | 10 |
| L24-144 | 16Leech24R24 | 144 | 12 |
| example-1 | 4D2 | 5 | 5 |
| D4-9 | 4D4 | 9 | 4.5 |

``build_constellation`` also accepts ``<M>-QAM``, ``TDHQ1`` and ``TDHQ2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import re

from vcmod.exceptions import ConfigError, InternalConsistencyError
from vcmod.logging import get_global_logger
from vcmod.vc.constellation import VoronoiConstellation, build_vc
from vcmod.vc.qam import TDHQ_FORMATS, build_qam, build_tdhq

_QAM_NAME = re.compile(r"^(\d+)-QAM$", re.IGNORECASE)


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog row.

    Attributes:
        name: Catalog name.
        shaping: Textual name of the shaping lattice.
        m: Expected bits per point.
        beta: Expected spectral efficiency.
    """

    name: str
    shaping: str
    m: int
    beta: float


CATALOG: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry("E8-24", "8E8", 24, 6.0),
        CatalogEntry("E8-32", "16E8", 32, 8.0),
        CatalogEntry("E8-40", "32E8", 40, 10.0),
        CatalogEntry("E8-48", "64E8", 48, 12.0),
        CatalogEntry("L24-72", "2Leech24R24", 72, 6.0),
        CatalogEntry("L24-96", "4Leech24R24", 96, 8.0),
        CatalogEntry("L24-120", "8Leech24R24", 120, 10.0),
        CatalogEntry("L24-144", "16Leech24R24", 144, 12.0),
        CatalogEntry("L16-76", "16BW16", 76, 9.5),
        CatalogEntry("L16-92", "32BW16", 92, 11.5),
        CatalogEntry("example-1", "4D2", 5, 5.0),
        CatalogEntry("D4-9", "4D4", 9, 4.5),
    )
}


@lru_cache(maxsize=None)
def catalog_build(name: str) -> VoronoiConstellation:
    """Builds a catalog VC and checks its size against the table.

    Raises:
        ConfigError: If the name is not in the catalog.
        InternalConsistencyError: If M or β disagree with the table.
    """
    entry = CATALOG.get(name)
    if entry is None:
        raise ConfigError(
            f"Unknown constellation: {name!r} (known: {', '.join(CATALOG)})"
        )
    vc = build_vc(entry.shaping, name=entry.name)
    if vc.m != entry.m or vc.beta != entry.beta:
        raise InternalConsistencyError(
            f"{name}: built m={vc.m} beta={vc.beta}, "
            f"expected m={entry.m} beta={entry.beta}"
        )
    get_global_logger().verbose(
        "VC", f"{name}: Z{vc.n}/{entry.shaping} M=2^{vc.m} h={vc.h.tolist()}"
    )
    return vc


@lru_cache(maxsize=None)
def build_constellation(name: str) -> VoronoiConstellation:
    """Builds any named constellation: catalog VCs, QAM or TDHQ.

    Raises:
        ConfigError: If the name is unknown.
    """
    if name in CATALOG:
        return catalog_build(name)
    if name.upper() in TDHQ_FORMATS:
        return build_tdhq(*TDHQ_FORMATS[name.upper()], name=name.upper())
    match = _QAM_NAME.match(name)
    if match:
        size = int(match.group(1))
        if size < 2 or size & (size - 1):
            raise ConfigError(f"QAM size must be a power of 2: {name!r}")
        return build_qam(size.bit_length() - 1)
    raise ConfigError(
        f"Unknown constellation: {name!r} "
        f"(known: {', '.join(CATALOG)}, <M>-QAM, {', '.join(TDHQ_FORMATS)})"
    )


def is_known_constellation(name: str) -> bool:
    """True if ``build_constellation`` accepts the name (without building it)."""
    if name in CATALOG or name.upper() in TDHQ_FORMATS:
        return True
    match = _QAM_NAME.match(name)
    if not match:
        return False
    size = int(match.group(1))
    return size >= 2 and not size & (size - 1)
