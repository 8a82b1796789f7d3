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

"""Forward error correction: LDPC codes, level codes and the interleaver.

Modules:
    ldpc
        LdpcCode with systematic encoding and normalized min-sum decoding.
    alist
        Parity-check matrices in alist format.
    construct
        Quasi-cyclic repeat-accumulate codes and named built-in codes.
    component
        Frozen, uncoded and LDPC level codes behind one protocol.
    interleaver
        Seeded frame permutation.
"""

from vcmod.fec.alist import load_parity, parse_alist, save_alist
from vcmod.fec.component import (
    ComponentCode,
    FrozenLevel,
    UncodedLevel,
    build_component,
)
from vcmod.fec.construct import (
    DVB_S2_RATES,
    HAMMING_7_4,
    base_graph_shape,
    builtin_code,
    qc_ldpc_code,
)
from vcmod.fec.interleaver import Interleaver, deinterleave, interleave
from vcmod.fec.ldpc import (
    DEFAULT_MAX_ITER,
    MIN_SUM_FACTOR,
    LdpcCode,
    gf2_rref,
    ldpc_decode,
    ldpc_encode,
)

__all__ = [
    "load_parity",
    "parse_alist",
    "save_alist",
    "ComponentCode",
    "FrozenLevel",
    "UncodedLevel",
    "build_component",
    "DVB_S2_RATES",
    "HAMMING_7_4",
    "base_graph_shape",
    "builtin_code",
    "qc_ldpc_code",
    "Interleaver",
    "deinterleave",
    "interleave",
    "DEFAULT_MAX_ITER",
    "MIN_SUM_FACTOR",
    "LdpcCode",
    "gf2_rref",
    "ldpc_decode",
    "ldpc_encode",
]
