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

"""Max-log LLR engines.

Modules:
    frame
        LlrFrame, clamping and the plain-text LLR dump format.
    exact
        Exhaustive reference LLRs and separable Gray-QAM LLRs.
    ball
        Euclidean-ball enumeration and BICM ball LLRs.
    multilevel
        Per-level LLRs for SP (coset quantization) and hybrid (scaled
        ball) multistage decoding.

Example:
    ```python
    import numpy as np
    from vcmod.llr import bicm_ball_llr, exact_maxlog_llr
    from vcmod.labeling import GrayLabeling
    from vcmod.vc import catalog_build

    vc = catalog_build("example-1")
    y = np.array([[0.3, -0.2]])
    exact = exact_maxlog_llr(vc, GrayLabeling(vc.h), y, sigma2=0.5)
    approx = bicm_ball_llr(vc, y, sigma2=0.5, radius2=8, default=20)
    ```
"""

from vcmod.llr.ball import (
    DEFAULT_R,
    EuclideanBall,
    ball_enumerate,
    ball_offsets,
    bicm_ball_llr,
    check_radius2,
    default_radius2,
)
from vcmod.llr.exact import exact_maxlog_llr, qam_exact_llr
from vcmod.llr.frame import (
    LLR_CLAMP,
    LlrFrame,
    clamp_llr,
    read_llr_frames,
    read_table,
    write_llr_frames,
)
from vcmod.llr.multilevel import mlcm_hybrid_llr, mlcm_sp_llr

__all__ = [
    "DEFAULT_R",
    "EuclideanBall",
    "ball_enumerate",
    "ball_offsets",
    "bicm_ball_llr",
    "check_radius2",
    "default_radius2",
    "exact_maxlog_llr",
    "qam_exact_llr",
    "LLR_CLAMP",
    "LlrFrame",
    "clamp_llr",
    "read_llr_frames",
    "read_table",
    "write_llr_frames",
    "mlcm_hybrid_llr",
    "mlcm_sp_llr",
]
