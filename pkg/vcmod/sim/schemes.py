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

"""Building runnable experiments from an effective configuration.

Example:
    ```python
    from pathlib import Path
    from vcmod.config import load_experiment
    from vcmod.sim import build_experiment, run_experiment

    experiment = build_experiment(load_experiment(Path("experiments/qam64.yaml")))
    records = run_experiment(experiment)
    ```
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from vcmod.cm import BicmScheme, MlcmScheme, build_bicm_scheme, build_mlcm_scheme
from vcmod.exceptions import ConfigError
from vcmod.fec import LdpcCode, builtin_code
from vcmod.labeling import Labeling, MultilevelLabeling, build_labeling
from vcmod.llr import DEFAULT_R
from vcmod.results import BerRecord
from vcmod.sim.channel import ChannelConfig
from vcmod.sim.harness import StopRule, coded_ber, uncoded_ber
from vcmod.vc import VoronoiConstellation, build_constellation


@dataclass(frozen=True, eq=False)
class Experiment:
    """Everything a BER sweep needs.

    Attributes:
        name: Scheme identifier for the records, or None for the default.
        constellation: The constellation.
        labeling: Its labeling.
        scheme: BICM or MLCM scheme, None for uncoded transmission.
        channel: SNR grid and master seed.
        stop: Stop rule per SNR point.
        threads: Worker threads.
        genie: Genie-aided multistage decoding (MLCM).
    """

    name: str | None
    constellation: VoronoiConstellation
    labeling: Labeling
    scheme: BicmScheme | MlcmScheme | None
    channel: ChannelConfig
    stop: StopRule
    threads: int = 1
    genie: bool = False


def bicm_code(code: Mapping[str, Any]) -> LdpcCode:
    """The BICM code named by a ``code`` section."""
    name = code.get("name")
    if name:
        return builtin_code(str(name))
    return builtin_code(f"qc-{int(code['length'])}-{str(code['rate']).strip()}")


def build_experiment(cfg: Mapping[str, Any]) -> Experiment:
    """Builds constellation, labeling and scheme of an experiment.

    Args:
        cfg: Effective configuration (see ``vcmod.config.load_experiment``).

    Returns:
        The experiment, ready for ``run_experiment``.

    Raises:
        ConfigError: If the scheme is unknown or does not fit the mapping.

    """
    constellation = build_constellation(str(cfg["constellation"]))
    scheme_kind = cfg.get("scheme", "uncoded")
    mapping = cfg.get("mapping", "gray")
    labeling = build_labeling(constellation, mapping, cfg.get("chain"))
    llr = cfg.get("llr", {})
    max_iter = int(cfg.get("decoder", {}).get("max_iter", 50))
    default = float(llr.get("default", DEFAULT_R))

    scheme: BicmScheme | MlcmScheme | None
    if scheme_kind == "uncoded":
        scheme = None
    elif scheme_kind == "bicm":
        if mapping != "gray":
            raise ConfigError(f"BICM uses the Gray mapping, got {mapping!r}")
        scheme = build_bicm_scheme(
            constellation,
            bicm_code(cfg.get("code", {})),
            seed=int(cfg.get("seed", 0)),
            radius2=llr.get("radius2"),
            default=default,
            max_iter=max_iter,
        )
    elif scheme_kind == "mlcm":
        if mapping == "gray":
            raise ConfigError("MLCM needs an SP or hybrid mapping")
        multilevel: MultilevelLabeling = labeling  # type: ignore[assignment]
        scheme = build_mlcm_scheme(
            constellation,
            multilevel,
            [str(level) for level in cfg.get("levels", [])],
            length=int(cfg.get("code", {}).get("length", 4000)),
            radius2=int(llr.get("hybrid_radius2", 1)),
            default=default,
            max_iter=max_iter,
        )
    else:
        raise ConfigError(f"Unknown scheme: {scheme_kind!r}")

    return Experiment(
        name=cfg.get("name"),
        constellation=constellation,
        labeling=labeling,
        scheme=scheme,
        channel=ChannelConfig.from_config(
            cfg.get("snr_db", [10.0]), int(cfg.get("seed", 0))
        ),
        stop=StopRule(**cfg.get("stop", {})),
        threads=int(cfg.get("threads", 1)),
        genie=bool(cfg.get("genie", False)),
    )


def run_experiment(experiment: Experiment) -> list[BerRecord]:
    """Runs the BER sweep of an experiment."""
    snr_db = experiment.channel.snr_db
    seed = experiment.channel.seed
    if experiment.scheme is None:
        return uncoded_ber(
            experiment.constellation,
            experiment.labeling,
            snr_db,
            stop=experiment.stop,
            seed=seed,
            threads=experiment.threads,
            name=experiment.name,
        )
    return coded_ber(
        experiment.scheme,
        snr_db,
        stop=experiment.stop,
        seed=seed,
        threads=experiment.threads,
        genie=experiment.genie,
        name=experiment.name,
    )
