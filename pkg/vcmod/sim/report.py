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

"""Result files: BER records as CSV, sweep summaries as JSON, MI tables.

CSV columns are ``scheme,snr_db,bits,errors,prefec_ber,postfec_ber,
level_bers,seed,seconds``. SNR is written with 3 decimals, BERs in
scientific notation with 6 digits, per-level BERs joined by ``;`` and wall
time with 3 decimals. The JSON summary holds the same records, the
threshold SNR of every scheme at the target BER and the effective
configuration.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
import csv
from dataclasses import asdict
import json
from pathlib import Path
from typing import Any

from vcmod.exceptions import ConfigError
from vcmod.results import BerRecord, MiResult
from vcmod.sim.analytic import BER_TARGET, record_threshold

CSV_COLUMNS = (
    "scheme",
    "snr_db",
    "bits",
    "errors",
    "prefec_ber",
    "postfec_ber",
    "level_bers",
    "seed",
    "seconds",
)

MI_COLUMNS = ("snr_db", "scheme", "level", "bits", "conditioned_on", "mi", "stderr")


def record_row(record: BerRecord) -> dict[str, str]:
    """CSV row of a record with the fixed output precision."""
    return {
        "scheme": record.scheme,
        "snr_db": f"{record.snr_db:.3f}",
        "bits": str(record.bits),
        "errors": str(record.errors),
        "prefec_ber": f"{record.prefec_ber:.6e}",
        "postfec_ber": f"{record.postfec_ber:.6e}",
        "level_bers": ";".join(f"{b:.6e}" for b in record.level_bers),
        "seed": str(record.seed),
        "seconds": f"{record.seconds:.3f}",
    }


def write_records(
    path: Path, records: Iterable[BerRecord], append: bool = True
) -> None:
    """Writes records as CSV rows, adding the header to new files.

    Args:
        path: CSV file; parent directories are created.
        records: Records to write.
        append: Append to an existing file instead of replacing it.

    """
    path.parent.mkdir(parents=True, exist_ok=True)
    header = not (append and path.exists() and path.stat().st_size > 0)
    with path.open("a" if append else "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        if header:
            writer.writeheader()
        for record in records:
            writer.writerow(record_row(record))


def read_records(path: Path) -> list[BerRecord]:
    """Reads records written by ``write_records``.

    Raises:
        ConfigError: If the file is missing or a row is malformed.
    """
    if not path.exists():
        raise ConfigError(f"file not found: {path}")
    records = []
    with path.open(encoding="utf-8", newline="") as f:
        for line, row in enumerate(csv.DictReader(f), start=2):
            try:
                levels = row["level_bers"]
                records.append(
                    BerRecord(
                        scheme=row["scheme"],
                        snr_db=float(row["snr_db"]),
                        bits=int(row["bits"]),
                        errors=int(row["errors"]),
                        prefec_ber=float(row["prefec_ber"]),
                        postfec_ber=float(row["postfec_ber"]),
                        level_bers=tuple(float(v) for v in levels.split(";") if v),
                        seed=int(row["seed"]),
                        seconds=float(row["seconds"]),
                    )
                )
            except (KeyError, TypeError, ValueError) as err:
                raise ConfigError(f"{path}:{line}: malformed BER record") from err
    return records


def thresholds(
    records: Sequence[BerRecord], target: float = BER_TARGET
) -> dict[str, float | None]:
    """Threshold SNR of each scheme's post-FEC curve at the target BER."""
    by_scheme: dict[str, list[BerRecord]] = {}
    for record in records:
        by_scheme.setdefault(record.scheme, []).append(record)
    return {name: record_threshold(rows, target) for name, rows in by_scheme.items()}


def build_summary(
    records: Sequence[BerRecord],
    config: Mapping[str, Any],
    target: float = BER_TARGET,
) -> dict[str, Any]:
    """JSON-ready summary of a sweep."""
    return {
        "records": [
            {**asdict(r), "level_bers": list(r.level_bers), "stderr": r.stderr}
            for r in records
        ],
        "target_ber": target,
        "thresholds": thresholds(records, target),
        "config": dict(config),
    }


def write_summary(
    path: Path,
    records: Sequence[BerRecord],
    config: Mapping[str, Any],
    target: float = BER_TARGET,
) -> None:
    """Writes the JSON summary (2-space indent, trailing newline)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(build_summary(records, config, target), f, indent=2)
        f.write("\n")


def read_summary(path: Path) -> dict[str, Any]:
    """Loads a JSON summary.

    Raises:
        ConfigError: If the file is missing or not valid JSON.
    """
    try:
        with path.open(encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as err:
        raise ConfigError(f"file not found: {path}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(
            f"Error parsing JSON: {path}:{err.lineno}:{err.colno}: {err.msg}"
        ) from err


def mi_rows(result: MiResult) -> list[dict[str, str]]:
    """CSV rows of one MI estimate: one per level, then the full I(Y;X)."""
    rows = [
        {
            "snr_db": f"{result.snr_db:.3f}",
            "scheme": result.scheme,
            "level": str(i + 1),
            "bits": " ".join(str(b) for b in level.bits),
            "conditioned_on": " ".join(str(b) for b in level.conditioned_on),
            "mi": f"{level.mi:.6f}",
            "stderr": f"{level.stderr:.6f}",
        }
        for i, level in enumerate(result.levels)
    ]
    rows.append(
        {
            "snr_db": f"{result.snr_db:.3f}",
            "scheme": result.scheme,
            "level": "all",
            "bits": "",
            "conditioned_on": "",
            "mi": f"{result.full_mi:.6f}",
            "stderr": f"{result.full_stderr:.6f}",
        }
    )
    return rows


def write_mi(path: Path, results: Iterable[MiResult]) -> None:
    """Writes MI curves as CSV (columns ``MI_COLUMNS``)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=MI_COLUMNS)
        writer.writeheader()
        for result in results:
            writer.writerows(mi_rows(result))
