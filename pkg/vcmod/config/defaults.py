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

"""Default experiment configuration for vcmod.

These values are applied first, then overridden by site defaults
(defaults/org.yaml) and finally by the experiment file:

    1. Code defaults (this module) - always present
    2. Site defaults (defaults/org.yaml) - optional overrides
    3. Experiment file - required, names at least the constellation

An experiment file therefore only has to say what differs from a plain
uncoded Gray sweep.
"""

from __future__ import annotations

from typing import Any

API_VERSION = "vcmod/v1"

DEFAULT_CONFIG: dict[str, Any] = {
    "apiVersion": API_VERSION,
    # What is transmitted.
    "mapping": "gray",
    "chain": None,
    "scheme": "uncoded",
    # BICM code; "name" wins over rate/length when set.
    "code": {
        "name": None,
        "rate": "1/2",
        "length": 4000,
    },
    # MLCM component codes, one per coded level ("frozen", "uncoded", "2/3", ...).
    "levels": [],
    "genie": False,
    # Channel and Monte-Carlo control.
    "snr_db": [10.0],
    "seed": 0,
    "threads": 1,
    "stop": {
        "max_errors": 200,
        "max_bits": 10_000_000,
        "min_blocks": 1,
    },
    "decoder": {
        "max_iter": 50,
    },
    # Soft demapper knobs: BICM ball R² (null = 6 up to 8D, else 2), default
    # distance r and the hybrid MLCM scaled-ball R².
    "llr": {
        "radius2": None,
        "default": 20.0,
        "hybrid_radius2": 1,
    },
    "mi": {
        "scheme": "mlcm",
        "samples": 100_000,
    },
    # Output files, relative to the experiment file unless absolute.
    "output": {
        "dir": "results",
        "csv": "ber.csv",
        "summary": "summary.json",
        "mi": "mi.csv",
    },
}

