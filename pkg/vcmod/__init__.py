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

"""Voronoi constellations, binary labelings and coded modulation.

vcmod builds multidimensional Voronoi constellations from nested lattice
pairs and studies them as modulation formats over the AWGN channel.

vcmod provides:

- Fast closest-point quantizers for Zⁿ, Dₙ, E₈, BW₁₆ and the Leech lattice
- Voronoi constellation encoding and decoding with exact or sampled energy
- Gray-like, set-partitioning and hybrid binary labelings
- Max-log LLRs by exhaustive or Euclidean-ball search
- LDPC min-sum decoding with BICM and multilevel coding receivers
- Per-level mutual information and Monte-Carlo BER sweeps

Quick Start:
Inspect a constellation:

    $ vcmod vc-info E8-24

Run a sweep described by an experiment file:

    $ vcmod ber-sweep --config experiments/qam64-gray.yaml

For full CLI documentation:

    $ vcmod --help
"""

__version__ = "0.1.0"
__license__ = "Apache-2.0"
__description__ = "Voronoi constellations, labelings and coded modulation"

from vcmod.cm import mi_bit_levels
from vcmod.config import load_experiment
from vcmod.exceptions import (
    CodeError,
    ConfigError,
    ConstellationError,
    LabelingError,
    LatticeError,
    UnsupportedError,
    VCError,
)
from vcmod.labeling import build_labeling
from vcmod.lattices import lattice_from_name
from vcmod.results import BerRecord, MiResult, ValidationResult
from vcmod.sim import build_experiment, run_experiment
from vcmod.validation import validate_experiment
from vcmod.vc import VoronoiConstellation, build_constellation

__all__ = [
    "__version__",
    "__license__",
    "__description__",
    "BerRecord",
    "CodeError",
    "ConfigError",
    "ConstellationError",
    "LabelingError",
    "LatticeError",
    "MiResult",
    "UnsupportedError",
    "VCError",
    "ValidationResult",
    "VoronoiConstellation",
    "build_constellation",
    "build_experiment",
    "build_labeling",
    "lattice_from_name",
    "load_experiment",
    "mi_bit_levels",
    "run_experiment",
    "validate_experiment",
]
