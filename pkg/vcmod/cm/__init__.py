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

"""Coded modulation pipelines, rate bookkeeping and mutual information.

Modules:
    bicm
        BICM transmit and receive with one LDPC code and an interleaver.
    mlcm
        MLCM transmit and multistage receive for SP and hybrid labelings.
    rates
        Total-rate formulas, the simulated rate plans and the capacity rule.
    mi
        Per-level conditional mutual information by Monte-Carlo.

Example:
    ```python
    from vcmod.cm import RATE_PLANS, mlcm_total_rate

    mlcm_total_rate(8, 24, (8,), ("2/3",))    # Fraction(16, 3)
    [plan.total for plan in RATE_PLANS][:3]     # [5.33, 5.33, 5.33]
    ```
"""

from vcmod.cm.bicm import (
    BicmScheme,
    bicm_llr,
    bicm_receive,
    bicm_transmit,
    build_bicm_scheme,
    coded_bits,
)
from vcmod.cm.mi import (
    DEFAULT_MI_SAMPLES,
    MAX_MI_POINTS,
    MI_SCHEMES,
    mi_bit_levels,
    mi_blocks,
)
from vcmod.cm.mlcm import (
    MlcmScheme,
    build_mlcm_scheme,
    level_block,
    level_llr,
    mlcm_labels,
    mlcm_receive,
    mlcm_transmit,
)
from vcmod.cm.rates import (
    CAPACITY_CUTOFF,
    CAPACITY_RULE_RATES,
    RATE_PLANS,
    RatePlan,
    bicm_total_rate,
    capacity_rule_rates,
    mlcm_total_rate,
    plan_total_rate,
)

__all__ = [
    "BicmScheme",
    "bicm_llr",
    "bicm_receive",
    "bicm_transmit",
    "build_bicm_scheme",
    "coded_bits",
    "DEFAULT_MI_SAMPLES",
    "MAX_MI_POINTS",
    "MI_SCHEMES",
    "mi_bit_levels",
    "mi_blocks",
    "MlcmScheme",
    "build_mlcm_scheme",
    "level_block",
    "level_llr",
    "mlcm_labels",
    "mlcm_receive",
    "mlcm_transmit",
    "CAPACITY_CUTOFF",
    "CAPACITY_RULE_RATES",
    "RATE_PLANS",
    "RatePlan",
    "bicm_total_rate",
    "capacity_rule_rates",
    "mlcm_total_rate",
    "plan_total_rate",
]
