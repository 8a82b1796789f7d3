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

"""AWGN channel, Monte-Carlo BER harness, analytic references and reports.

Modules:
    channel
        AWGN, SNR conventions, SNR grids and per-point Philox streams.
    harness
        Uncoded and coded BER sweeps with a stop rule and a thread pool.
    analytic
        Exact Gray PAM/QAM BER and threshold read-outs at BER 1.81×10⁻³.
    schemes
        Experiments built from an effective configuration.
    report
        CSV records, JSON summaries and MI tables.

Example:
    ```python
    from vcmod.sim import gray_qam_ber

    gray_qam_ber((8, 8), snr_db=18.0)
    ```
"""

from vcmod.sim.analytic import (
    BER_TARGET,
    gray_pam_bit_errors,
    gray_qam_ber,
    record_threshold,
    threshold_crossing,
    threshold_gap,
)
from vcmod.sim.channel import (
    ChannelConfig,
    awgn,
    sigma2_per_2d,
    sigma2_total,
    snr_db_of,
    snr_grid,
    snr_streams,
)
from vcmod.sim.harness import (
    DEFAULT_BATCH,
    StopRule,
    coded_ber,
    measured_energy,
    run_points,
    uncoded_ber,
)
from vcmod.sim.report import (
    CSV_COLUMNS,
    MI_COLUMNS,
    build_summary,
    mi_rows,
    read_records,
    read_summary,
    record_row,
    thresholds,
    write_mi,
    write_records,
    write_summary,
)
from vcmod.sim.schemes import Experiment, bicm_code, build_experiment, run_experiment

__all__ = [
    "BER_TARGET",
    "gray_pam_bit_errors",
    "gray_qam_ber",
    "record_threshold",
    "threshold_crossing",
    "threshold_gap",
    "ChannelConfig",
    "awgn",
    "sigma2_per_2d",
    "sigma2_total",
    "snr_db_of",
    "snr_grid",
    "snr_streams",
    "DEFAULT_BATCH",
    "StopRule",
    "coded_ber",
    "measured_energy",
    "run_points",
    "uncoded_ber",
    "CSV_COLUMNS",
    "MI_COLUMNS",
    "build_summary",
    "mi_rows",
    "read_records",
    "read_summary",
    "record_row",
    "thresholds",
    "write_mi",
    "write_records",
    "write_summary",
    "Experiment",
    "bicm_code",
    "build_experiment",
    "run_experiment",
]
