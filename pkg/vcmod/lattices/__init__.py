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

"""Lattices, closest-point quantizers and partition chains.

This package holds everything vcmod knows about lattices: exact generators,
the named families (Zn, Dn, E8, BW16, Leech24) with scale and rotation
modifiers, fast quantizers, a sphere decoder for the rest, and the partition
machinery used by set-partitioning labels.

Modules:
    matrix
        Exact fraction determinants and inverses, integer Hermite form and
        residues modulo an integer lattice.
    quantizers
        Cubic, Dn and E8 quantizers, LLL reduction and SphereDecoder.
    lattice
        The Lattice value, named builders, rotation Rₙ, generator files.
    partition
        Partition steps, coset tables and named partition chains.

Example:
    ```python
    import numpy as np
    from vcmod.lattices import build_partition_chain, lattice_from_name

    e8 = lattice_from_name("E8")
    e8.quantize(np.random.default_rng(1).normal(size=8))

    chain = build_partition_chain("table-I-n8")
    print(chain.widths, chain.msed)
    ```
"""

from vcmod.lattices.lattice import (
    Lattice,
    barnes_wall,
    build_rotation,
    checkerboard,
    cubic,
    cvp_sphere_decode,
    from_generator,
    gosset,
    lattice_from_name,
    leech,
    load_generator,
    partition_order,
)
from vcmod.lattices.matrix import hermite_lower, residue
from vcmod.lattices.partition import (
    NAMED_CHAINS,
    CosetTable,
    LatticePartitionStep,
    PartitionChainSpec,
    build_coset_table,
    build_partition_chain,
    make_partition_step,
)
from vcmod.lattices.quantizers import (
    SphereDecoder,
    lll_reduce,
    quantize_cubic,
    quantize_dn,
    quantize_e8,
    round_half_up,
)

__all__ = [
    "Lattice",
    "barnes_wall",
    "build_rotation",
    "checkerboard",
    "cubic",
    "cvp_sphere_decode",
    "from_generator",
    "gosset",
    "lattice_from_name",
    "leech",
    "load_generator",
    "partition_order",
    "hermite_lower",
    "residue",
    "NAMED_CHAINS",
    "CosetTable",
    "LatticePartitionStep",
    "PartitionChainSpec",
    "build_coset_table",
    "build_partition_chain",
    "make_partition_step",
    "SphereDecoder",
    "lll_reduce",
    "quantize_cubic",
    "quantize_dn",
    "quantize_e8",
    "round_half_up",
]
