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

"""Voronoi constellations, QAM benchmarks and the constellation catalog.

Modules:
    constellation
        VoronoiConstellation, encode_g/decode_w, energy and offset tools.
    qam
        Gray QAM, PAM products and TDHQ as rectangular constellations.
    catalog
        Named VCs with their size checks, and build_constellation.

Example:
    ```python
    from vcmod.vc import average_energy, catalog_build

    vc = catalog_build("E8-24")
    print(vc.M, vc.m, vc.beta)          # 16777216 24 6.0
    print(average_energy(vc, mode="monte-carlo", trials=10_000))
    ```
"""

from vcmod.vc.catalog import (
    CATALOG,
    CatalogEntry,
    build_constellation,
    catalog_build,
    is_known_constellation,
)
from vcmod.vc.constellation import (
    MAX_EXACT_POINTS,
    QamConstellation,
    VoronoiConstellation,
    average_energy,
    build_vc,
    cubic_reference_sizes,
    decode_w,
    encode_g,
    enumerate_points,
    index_grid,
    nearest_in_coset,
    optimize_offset,
    random_indices,
    shaping_gain_db,
    triangularize,
    with_offset,
)
from vcmod.vc.qam import (
    TDHQ_FORMATS,
    build_pam_product,
    build_qam,
    build_tdhq,
    qam_sizes,
)

__all__ = [
    "CATALOG",
    "CatalogEntry",
    "build_constellation",
    "catalog_build",
    "is_known_constellation",
    "MAX_EXACT_POINTS",
    "QamConstellation",
    "VoronoiConstellation",
    "average_energy",
    "build_vc",
    "cubic_reference_sizes",
    "decode_w",
    "encode_g",
    "enumerate_points",
    "index_grid",
    "nearest_in_coset",
    "optimize_offset",
    "random_indices",
    "shaping_gain_db",
    "triangularize",
    "with_offset",
    "TDHQ_FORMATS",
    "build_pam_product",
    "build_qam",
    "build_tdhq",
    "qam_sizes",
]
