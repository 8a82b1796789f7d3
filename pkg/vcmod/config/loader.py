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

"""Experiment configuration loading and merging.

The effective configuration of an experiment is built from up to four
layers, each overriding the previous one:

    1. **Code defaults** (vcmod/config/defaults.py), always present.
    2. **Site defaults** (defaults/org.yaml), found by walking upward from
       the experiment file; optional.
    3. **Experiment file**, required.
    4. **Command-line overrides** (--seed, --threads, --out), optional.

Merge Behavior:
    - **Dicts**: Recursively merged (keys from the overlay win)
    - **Lists**: Replaced, never concatenated
    - **Scalars**: Overwritten

Each leaf records the layer that set it under ``_provenance``
(``code_default``, ``org_yaml``, ``experiment``, ``cli``). The relative
``output.dir`` is resolved against the experiment file, so experiments are
relocatable.

Example:
    ```python
    from pathlib import Path
    from vcmod.config import load_experiment

    cfg = load_experiment(Path("experiments/e8-24-hybrid.yaml"))
    cfg["constellation"]                  # "E8-24"
    cfg["_provenance"]["stop"]["max_errors"]   # "code_default"
    ```
"""

from __future__ import annotations

import copy
from pathlib import Path
from typing import Any

import yaml

from vcmod.config.defaults import DEFAULT_CONFIG
from vcmod.exceptions import ConfigError
from vcmod.logging import get_global_logger


def load_yaml_file(p: Path) -> Any:
    """Loads a YAML file.

    Args:
        p: Path to the YAML file.

    Returns:
        The parsed object.

    Raises:
        ConfigError: If the file is missing, empty or not valid YAML. Parse
            errors carry the line and column of the problem.

    """
    if not p.exists():
        raise ConfigError(f"file not found: {p}")
    try:
        with p.open("r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.MarkedYAMLError as err:
        mark = err.problem_mark
        where = f"{p}:{mark.line + 1}:{mark.column + 1}" if mark else str(p)
        raise ConfigError(f"Error parsing YAML: {where}: {err.problem}") from err
    except yaml.YAMLError as err:
        raise ConfigError(f"Error parsing YAML: {p}: {err}") from err
    if data is None:
        raise ConfigError(f"YAML file is empty: {p}")
    return data


def deep_merge(
    base: dict[str, Any],
    overlay: dict[str, Any],
    *,
    provenance: dict[str, Any] | None = None,
    layer_name: str = "",
) -> dict[str, Any]:
    """Deep-merges two dicts, overlay wins.

    Does not mutate its inputs.

    Args:
        base: The base dictionary.
        overlay: The dictionary taking precedence.
        provenance: Optional mirror of the config structure; every leaf set
            by the overlay is recorded as ``layer_name``.
        layer_name: Name of the overlay layer.

    Returns:
        A new merged dictionary.
    """
    result: dict[str, Any] = dict(base)
    for k, v in overlay.items():
        if k in result and isinstance(result[k], dict) and isinstance(v, dict):
            sub_prov: dict[str, Any] | None = None
            if provenance is not None:
                sub = provenance.get(k)
                sub_prov = sub if isinstance(sub, dict) else {}
                provenance[k] = sub_prov
            result[k] = deep_merge(
                result[k], v, provenance=sub_prov, layer_name=layer_name
            )
        else:
            result[k] = copy.deepcopy(v)
            if provenance is not None and layer_name:
                provenance[k] = layer_name
    return result


def find_defaults_root(start_dir: Path) -> Path | None:
    """Walks upward from start_dir looking for defaults/org.yaml.

    Returns:
        The defaults/ directory if found, None otherwise.
    """
    for parent in [start_dir, *start_dir.parents]:
        candidate = parent / "defaults" / "org.yaml"
        if candidate.exists():
            return parent / "defaults"
    return None


def _init_provenance(cfg: dict[str, Any], prov: dict[str, Any]) -> None:
    for k, v in cfg.items():
        if isinstance(v, dict):
            _init_provenance(v, prov.setdefault(k, {}))
        else:
            prov[k] = "code_default"


def _resolve_output_dir(cfg: dict[str, Any], experiment_dir: Path) -> None:
    output = cfg.get("output")
    if not isinstance(output, dict):
        return
    raw = output.get("dir")
    if isinstance(raw, str) and raw and not Path(raw).is_absolute():
        output["dir"] = str((experiment_dir / raw).resolve())


def _log_yaml(data: dict[str, Any]) -> None:
    logger = get_global_logger()
    text = yaml.safe_dump(data, default_flow_style=False, sort_keys=False)
    for line in text.splitlines():
        if line.strip():
            logger.debug("CONFIG", line)


def config_echo(cfg: dict[str, Any]) -> dict[str, Any]:
    """The effective configuration without bookkeeping keys.

    This is the copy written into result summaries; loading it again as an
    experiment reproduces the same configuration.
    """
    return {k: copy.deepcopy(v) for k, v in cfg.items() if not k.startswith("_")}


def load_experiment(
    experiment_path: Path,
    *,
    overrides: dict[str, Any] | None = None,
    validate: bool = True,
) -> dict[str, Any]:
    """Loads and merges the effective configuration of an experiment.

    Args:
        experiment_path: Path to the experiment YAML file.
        overrides: Command-line values merged last.
        validate: Check the merged result against the schema.

    Returns:
        The merged configuration with ``_provenance``.

    Raises:
        ConfigError: On missing files, YAML errors, a non-mapping document or
            (with ``validate``) an invalid configuration.

    """
    logger = get_global_logger()
    experiment_path = experiment_path.resolve()
    experiment_dir = experiment_path.parent
    logger.verbose("CONFIG", f"Loading experiment: {experiment_path}")

    experiment = load_yaml_file(experiment_path)
    if not isinstance(experiment, dict):
        raise ConfigError(
            f"top-level YAML must be a mapping (dict): {experiment_path}"
        )

    merged = copy.deepcopy(DEFAULT_CONFIG)
    provenance: dict[str, Any] = {}
    _init_provenance(DEFAULT_CONFIG, provenance)
    layers = 1

    defaults_root = find_defaults_root(experiment_dir)
    if defaults_root:
        org_path = defaults_root / "org.yaml"
        logger.verbose("CONFIG", f"Loading: {org_path}")
        org = load_yaml_file(org_path)
        if isinstance(org, dict):
            logger.debug("CONFIG", "--- Content from org.yaml ---")
            _log_yaml(org)
            merged = deep_merge(
                merged, org, provenance=provenance, layer_name="org_yaml"
            )
            layers += 1

    logger.debug("CONFIG", f"--- Content from {experiment_path.name} ---")
    _log_yaml(experiment)
    merged = deep_merge(
        merged, experiment, provenance=provenance, layer_name="experiment"
    )
    layers += 1

    if overrides:
        merged = deep_merge(merged, overrides, provenance=provenance, layer_name="cli")
        layers += 1

    logger.verbose("CONFIG", f"Deep merged {layers} layer(s)")
    _resolve_output_dir(merged, experiment_dir)
    logger.debug("CONFIG", "--- Effective configuration ---")
    _log_yaml(config_echo(merged))
    merged["_provenance"] = provenance

    if validate:
        from vcmod.validation import validate_config

        result = validate_config(merged, config_path=str(experiment_path))
        if result.errors:
            raise ConfigError(f"Invalid configuration: {'; '.join(result.errors)}")
        for warning in result.warnings:
            logger.warning("CONFIG", warning)
    return merged
