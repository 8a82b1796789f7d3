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

"""Bit labelings of constellation indices.

Modules:
    base
        Labeling protocol and bit packing helpers.
    gray
        Binary reflected Gray code per dimension.
    set_partition
        Set-partitioning labeling along a lattice partition chain.
    hybrid
        Hybrid labeling along the chain Zⁿ/2^{p₁}Zⁿ/.../2^pZⁿ.
    factory
        build_labeling from configuration names.

Example:
    ```python
    import numpy as np
    from vcmod.labeling import build_labeling
    from vcmod.vc import catalog_build

    vc = catalog_build("example-1")
    sp = build_labeling(vc, "sp", "table-I-n2")
    bits = sp.demap(np.array([3, 2]))
    sp.map(bits)         # array([3, 2])
    ```
"""

from vcmod.labeling.base import (
    Labeling,
    check_width,
    level_offsets,
    pack_bits,
    unpack_bits,
)
from vcmod.labeling.factory import (
    DEFAULT_CHAINS,
    MAPPINGS,
    build_labeling,
    check_roundtrip,
)
from vcmod.labeling.gray import GrayLabeling, brgc_to_int, int_to_brgc
from vcmod.labeling.hybrid import (
    HybridChainSpec,
    HybridLabeling,
    build_hybrid_chain,
    hybrid_demap,
    hybrid_map,
)
from vcmod.labeling.set_partition import SetPartitionLabeling, sp_demap, sp_map

MultilevelLabeling = SetPartitionLabeling | HybridLabeling

__all__ = [
    "Labeling",
    "check_width",
    "level_offsets",
    "pack_bits",
    "unpack_bits",
    "DEFAULT_CHAINS",
    "MAPPINGS",
    "build_labeling",
    "check_roundtrip",
    "GrayLabeling",
    "brgc_to_int",
    "int_to_brgc",
    "HybridChainSpec",
    "HybridLabeling",
    "build_hybrid_chain",
    "hybrid_demap",
    "hybrid_map",
    "MultilevelLabeling",
    "SetPartitionLabeling",
    "sp_demap",
    "sp_map",
]
