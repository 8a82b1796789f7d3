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

"""Experiment validation.

Checks an experiment configuration without building constellations or
codes, so mistakes surface before a long sweep starts.

Validation Checks:

- YAML syntax is valid and the document is a mapping
- apiVersion is supported
- constellation is present and names a known constellation
- mapping, scheme and MI scheme take allowed values
- section fields have the right types (unknown fields warn, with a
  "did you mean" hint when a known field is close)
- rates parse as fractions, stop rule and thread counts are positive
- scheme-specific rules: BICM uses Gray, MLCM needs an SP or hybrid mapping
  and at least one level code, the default distance exceeds the ball R²

Example:
    ```python
    from pathlib import Path
    from vcmod.validation import validate_experiment

    result = validate_experiment(Path("experiments/e8-24-hybrid.yaml"))
    if result.status != "valid":
        for error in result.errors:
            print(f"Error: {error}")
    ```
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any

from vcmod.cm import MI_SCHEMES
from vcmod.config import API_VERSION, DEFAULT_CONFIG, deep_merge, load_yaml_file
from vcmod.exceptions import ConfigError
from vcmod.labeling import MAPPINGS
from vcmod.logging import get_global_logger
from vcmod.results import ValidationResult
from vcmod.sim.channel import snr_grid
from vcmod.vc import is_known_constellation

__all__ = ["SCHEMES", "validate_config", "validate_experiment"]

SCHEMES = ("uncoded", "bicm", "mlcm")

_NONE = type(None)
_NUMBER = (int, float)

FieldSpec = tuple[type | tuple[type, ...], tuple[str, ...] | None, str]

_TOP_FIELDS: dict[str, FieldSpec] = {
    "apiVersion": (str, None, "configuration format version"),
    "name": (str, None, "experiment name"),
    "description": (str, None, "free text"),
    "constellation": (str, None, "constellation name"),
    "mapping": (str, MAPPINGS, "labeling"),
    "chain": ((str, _NONE), None, "partition chain"),
    "scheme": (str, SCHEMES, "transmission scheme"),
    "code": (dict, None, "BICM code"),
    "levels": (list, None, "MLCM level codes"),
    "genie": (bool, None, "genie-aided multistage decoding"),
    "snr_db": ((list, dict, int, float), None, "SNR grid"),
    "seed": (int, None, "master seed"),
    "threads": (int, None, "worker threads"),
    "stop": (dict, None, "stop rule"),
    "decoder": (dict, None, "LDPC decoder"),
    "llr": (dict, None, "soft demapper"),
    "mi": (dict, None, "mutual information"),
    "output": (dict, None, "output files"),
}

_CODE_FIELDS: dict[str, FieldSpec] = {
    "name": ((str, _NONE), None, "built-in code name or alist path"),
    "rate": (str, None, "code rate"),
    "length": (int, None, "codeword length"),
}

_STOP_FIELDS: dict[str, FieldSpec] = {
    "max_errors": (int, None, "bit errors per point"),
    "max_bits": (int, None, "bits per point"),
    "min_blocks": (int, None, "blocks per point"),
}

_DECODER_FIELDS: dict[str, FieldSpec] = {
    "max_iter": (int, None, "min-sum iterations"),
}

_LLR_FIELDS: dict[str, FieldSpec] = {
    "radius2": ((int, _NONE), None, "BICM ball R²"),
    "default": (_NUMBER, None, "default distance r"),
    "hybrid_radius2": (int, None, "hybrid scaled-ball R²"),
}

_MI_FIELDS: dict[str, FieldSpec] = {
    "scheme": (str, MI_SCHEMES, "MI decomposition"),
    "samples": (int, None, "Monte-Carlo samples"),
}

_OUTPUT_FIELDS: dict[str, FieldSpec] = {
    "dir": (str, None, "output directory"),
    "csv": (str, None, "BER records file"),
    "summary": (str, None, "JSON summary file"),
    "mi": (str, None, "MI curves file"),
}

_SECTIONS: dict[str, dict[str, FieldSpec]] = {
    "code": _CODE_FIELDS,
    "stop": _STOP_FIELDS,
    "decoder": _DECODER_FIELDS,
    "llr": _LLR_FIELDS,
    "mi": _MI_FIELDS,
    "output": _OUTPUT_FIELDS,
}

_POSITIVE = (
    ("threads",),
    ("code", "length"),
    ("stop", "max_errors"),
    ("stop", "max_bits"),
    ("decoder", "max_iter"),
    ("mi", "samples"),
)


def _find_similar_field(unknown: str, known_fields: set[str]) -> str | None:
    """Finds a known field that the unknown one is probably a typo of.

    Compares names case-insensitively with separators removed, then checks
    for substrings of more than three characters.
    """
    unknown_lower = unknown.lower().replace("_", "").replace("-", "")
    for known in sorted(known_fields):
        known_lower = known.lower().replace("_", "").replace("-", "")
        if unknown_lower == known_lower:
            return known
        if len(unknown_lower) > 3 and (
            unknown_lower in known_lower or known_lower in unknown_lower
        ):
            return known
    return None


def _type_name(expected: type | tuple[type, ...]) -> str:
    types = expected if isinstance(expected, tuple) else (expected,)
    return " or ".join("null" if t is _NONE else t.__name__ for t in types)


def _validate_field_type(
    value: object,
    expected: type | tuple[type, ...],
    field_path: str,
    errors: list[str],
) -> bool:
    """Checks a field's type; booleans are not accepted as numbers."""
    types = expected if isinstance(expected, tuple) else (expected,)
    is_bool = isinstance(value, bool) and bool not in types
    ok = isinstance(value, types) and not is_bool
    if not ok:
        errors.append(
            f"{field_path}: Must be {_type_name(expected)}, got {type(value).__name__}"
        )
    return ok


def _validate_section(
    section: Mapping[str, Any],
    schema: dict[str, FieldSpec],
    section_path: str,
    errors: list[str],
    warnings: list[str],
) -> None:
    """Validates a section against its schema.

    Unknown fields produce warnings; wrong types and values produce errors.
    """
    known_fields = set(schema)
    for unknown in sorted(set(section) - known_fields):
        if unknown.startswith("_"):
            continue
        similar = _find_similar_field(unknown, known_fields)
        prefix = f"{section_path}: " if section_path else ""
        if similar:
            warnings.append(
                f"{prefix}Unknown field '{unknown}'. Did you mean '{similar}'?"
            )
        else:
            warnings.append(f"{prefix}Unknown field '{unknown}'")

    for field_name, (expected, allowed, _desc) in schema.items():
        if field_name not in section:
            continue
        value = section[field_name]
        field_path = f"{section_path}.{field_name}" if section_path else field_name
        if not _validate_field_type(value, expected, field_path, errors):
            continue
        if allowed is not None and value not in allowed:
            allowed_str = ", ".join(f"'{v}'" for v in allowed)
            errors.append(
                f"{field_path}: Invalid value '{value}'. Allowed: {allowed_str}"
            )


def _get(config: Mapping[str, Any], path: tuple[str, ...]) -> Any:
    value: Any = config
    for key in path:
        if not isinstance(value, Mapping) or key not in value:
            return None
        value = value[key]
    return value


def _parse_rate(value: object) -> Fraction | None:
    try:
        rate = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        return None
    return rate if 0 <= rate <= 1 else None


def _validate_snr(value: object, errors: list[str]) -> None:
    try:
        snr_grid(value)  # type: ignore[arg-type]
    except ConfigError as err:
        errors.append(f"snr_db: {err}")


def _validate_scheme(config: Mapping[str, Any], errors: list[str]) -> None:
    scheme = config.get("scheme")
    mapping = config.get("mapping")
    if scheme == "bicm":
        if mapping != "gray":
            errors.append("scheme 'bicm' uses the Gray mapping, set mapping: gray")
        code = config.get("code")
        if isinstance(code, Mapping) and not code.get("name"):
            if _parse_rate(code.get("rate")) is None:
                errors.append(
                    f"code.rate: '{code.get('rate')}' is not a rate like '2/3'"
                )
    if scheme == "mlcm":
        if mapping not in ("sp", "hybrid"):
            errors.append("scheme 'mlcm' needs mapping 'sp' or 'hybrid'")
        levels = config.get("levels")
        if isinstance(levels, list):
            if not levels:
                errors.append("levels: MLCM needs one code per coded level")
            for i, level in enumerate(levels):
                if not isinstance(level, str | int):
                    kind = type(level).__name__
                    errors.append(f"levels[{i}]: Must be str, got {kind}")
    if config.get("genie") is True and scheme != "mlcm":
        errors.append("genie: Genie-aided decoding applies to scheme 'mlcm' only")


def _validate_llr(config: Mapping[str, Any], errors: list[str]) -> None:
    llr = config.get("llr")
    if not isinstance(llr, Mapping):
        return
    radius2 = llr.get("radius2")
    default = llr.get("default")
    if isinstance(radius2, int) and not isinstance(radius2, bool):
        if radius2 < 0:
            errors.append("llr.radius2: Must be >= 0")
        elif isinstance(default, _NUMBER) and default <= radius2:
            errors.append(
                f"llr.default: r={default} must exceed the ball radius R²={radius2}"
            )
    hybrid = llr.get("hybrid_radius2")
    if isinstance(hybrid, int) and not isinstance(hybrid, bool) and hybrid < 1:
        errors.append("llr.hybrid_radius2: Must be >= 1")


def validate_config(
    config: Mapping[str, Any],
    config_path: str = "",
) -> ValidationResult:
    """Validates a configuration dict.

    Used both by ``validate_experiment`` and by ``load_experiment`` so that
    one set of rules applies everywhere.

    Args:
        config: The configuration to validate (raw or merged).
        config_path: Path string for error context.

    Returns:
        Validation status, errors and warnings.

    """
    logger = get_global_logger()
    errors: list[str] = []
    warnings: list[str] = []

    api_version = config.get("apiVersion")
    if api_version is None:
        errors.append("Missing required field: apiVersion")
    elif isinstance(api_version, str) and api_version != API_VERSION:
        warnings.append(
            f"apiVersion '{api_version}' may not be supported "
            f"(expected: {API_VERSION})"
        )

    constellation = config.get("constellation")
    if constellation is None:
        errors.append("Missing required field: constellation")
    elif isinstance(constellation, str) and not is_known_constellation(constellation):
        errors.append(f"constellation: Unknown constellation '{constellation}'")

    _validate_section(config, _TOP_FIELDS, "", errors, warnings)
    for name, schema in _SECTIONS.items():
        section = config.get(name)
        if isinstance(section, Mapping):
            _validate_section(section, schema, name, errors, warnings)

    if "snr_db" in config:
        _validate_snr(config["snr_db"], errors)
    for path in _POSITIVE:
        value = _get(config, path)
        if isinstance(value, int) and not isinstance(value, bool) and value < 1:
            errors.append(f"{'.'.join(path)}: Must be >= 1, got {value}")
    _validate_scheme(config, errors)
    _validate_llr(config, errors)

    status = "valid" if not errors else "invalid"
    logger.verbose(
        "CONFIG",
        f"{config_path or 'configuration'}: {status} "
        f"({len(errors)} error(s), {len(warnings)} warning(s))",
    )
    return ValidationResult(
        status=status, errors=errors, warnings=warnings, config_path=config_path
    )


def validate_experiment(experiment_path: Path) -> ValidationResult:
    """Parses an experiment file and validates it over the code defaults.

    This is the entry point of ``vcmod validate``; it never raises for a bad
    experiment, every problem is reported in the result.

    Args:
        experiment_path: Path to the experiment YAML file.

    Returns:
        Validation status, errors and warnings.

    """
    path_str = str(experiment_path)
    get_global_logger().verbose("CONFIG", f"Validating experiment: {path_str}")
    try:
        experiment = load_yaml_file(experiment_path)
    except ConfigError as err:
        return ValidationResult("invalid", [str(err)], [], path_str)
    if not isinstance(experiment, dict):
        return ValidationResult(
            "invalid", ["Experiment must be a YAML mapping"], [], path_str
        )

    merged = deep_merge(DEFAULT_CONFIG, experiment)
    result = validate_config(merged, config_path=path_str)
    if "apiVersion" not in experiment:
        result.warnings.append(f"Missing apiVersion, assuming {API_VERSION}")
    return result
