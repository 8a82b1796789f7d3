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

"""Experiment configuration for vcmod.

Experiments are YAML files merged over code defaults and optional site
defaults (defaults/org.yaml). Dicts merge recursively; lists and scalars are
replaced (last wins).

Example:
    ```python
    from pathlib import Path
    from vcmod.config import load_experiment

    cfg = load_experiment(Path("experiments/qam64-gray.yaml"))
    cfg["snr_db"]                     # [16.0, 18.0, 20.0]
    ```
"""

from vcmod.config.defaults import API_VERSION, DEFAULT_CONFIG
from vcmod.config.loader import (
    config_echo,
    deep_merge,
    find_defaults_root,
    load_experiment,
    load_yaml_file,
)

__all__ = [
    "API_VERSION",
    "DEFAULT_CONFIG",
    "config_echo",
    "deep_merge",
    "find_defaults_root",
    "load_experiment",
    "load_yaml_file",
]
