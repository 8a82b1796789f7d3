"""Tests for vcmod.sim.report."""

from __future__ import annotations

import csv

import pytest

from vcmod.exceptions import ConfigError
from vcmod.results import BerRecord, LevelMi, MiResult
from vcmod.sim import (
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


@pytest.fixture
def records():
    """Two schemes, one of which crosses the target."""
    return [
        BerRecord("a", 10.0, 10**6, 10**4, 0.05, 1e-2, (0.1, 0.02), 3, 1.25),
        BerRecord("a", 11.0, 10**6, 100, 0.03, 1e-4, (0.01, 0.0), 3, 1.5),
        BerRecord("b", 10.0, 2000, 200, 0.2, 0.1),
    ]


class TestRecords:
    """Tests for the BER record CSV."""

    def test_row_format(self, records):
        """Tests the fixed precision of each column."""
        row = record_row(records[0])
        assert row["snr_db"] == "10.000"
        assert row["postfec_ber"] == "1.000000e-02"
        assert row["level_bers"] == "1.000000e-01;2.000000e-02"
        assert row["seconds"] == "1.250"
        assert tuple(row) == CSV_COLUMNS

    def test_write_then_read(self, tmp_test_dir, records):
        """Tests that written records read back unchanged."""
        path = tmp_test_dir / "out" / "ber.csv"
        write_records(path, records)
        assert read_records(path) == records

    def test_append_keeps_one_header(self, tmp_test_dir, records):
        """Tests that appending does not repeat the header."""
        path = tmp_test_dir / "ber.csv"
        write_records(path, records[:1])
        write_records(path, records[1:])
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 4

    def test_replace(self, tmp_test_dir, records):
        """Tests append=False."""
        path = tmp_test_dir / "ber.csv"
        write_records(path, records)
        write_records(path, records[:1], append=False)
        assert len(read_records(path)) == 1

    def test_missing_file(self, tmp_test_dir):
        """Tests that reading a missing file raises ConfigError."""
        with pytest.raises(ConfigError, match="file not found"):
            read_records(tmp_test_dir / "none.csv")

    def test_malformed_row(self, tmp_test_dir, records):
        """Tests that a bad number names its line."""
        path = tmp_test_dir / "ber.csv"
        write_records(path, records[:1])
        text = path.read_text(encoding="utf-8").replace("10.000", "ten")
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ConfigError, match=":2: malformed"):
            read_records(path)


class TestSummary:
    """Tests for thresholds and the JSON summary."""

    def test_thresholds_per_scheme(self, records):
        """Tests one threshold per scheme, None when not crossed."""
        result = thresholds(records, target=1e-3)
        assert result["a"] == pytest.approx(10.5)
        assert result["b"] is None

    def test_summary_contents(self, records):
        """Tests records, target and configuration in the summary."""
        summary = build_summary(records, {"constellation": "E8-24"}, target=1e-3)
        assert summary["target_ber"] == 1e-3
        assert summary["config"] == {"constellation": "E8-24"}
        assert summary["records"][0]["level_bers"] == [0.1, 0.02]
        assert summary["records"][2]["stderr"] == pytest.approx(
            (0.1 * 0.9 / 2000) ** 0.5
        )

    def test_write_then_read(self, tmp_test_dir, records):
        """Tests the JSON file round trip and its trailing newline."""
        path = tmp_test_dir / "summary.json"
        write_summary(path, records, {"seed": 3})
        assert path.read_text(encoding="utf-8").endswith("}\n")
        summary = read_summary(path)
        assert summary["config"] == {"seed": 3}
        assert set(summary["thresholds"]) == {"a", "b"}

    def test_invalid_json(self, tmp_test_dir):
        """Tests that a broken file raises ConfigError with its position."""
        path = tmp_test_dir / "summary.json"
        path.write_text("{\n  \"records\": [\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="Error parsing JSON"):
            read_summary(path)

    def test_missing_summary(self, tmp_test_dir):
        """Tests that a missing summary raises ConfigError."""
        with pytest.raises(ConfigError, match="file not found"):
            read_summary(tmp_test_dir / "none.json")


class TestMiFiles:
    """Tests for the MI curve CSV."""

    @pytest.fixture
    def mi_result(self):
        """A two-level estimate."""
        levels = (
            LevelMi((0,), (), 0.75, 0.01),
            LevelMi((1, 2), (0,), 1.5, 0.02),
        )
        return MiResult(12.0, "mlcm", levels, 2.25, 0.015, 1000)

    def test_rows(self, mi_result):
        """Tests one row per level plus the full MI."""
        rows = mi_rows(mi_result)
        assert [r["level"] for r in rows] == ["1", "2", "all"]
        assert rows[1]["bits"] == "1 2"
        assert rows[1]["conditioned_on"] == "0"
        assert rows[2]["mi"] == "2.250000"

    def test_write(self, tmp_test_dir, mi_result):
        """Tests the CSV header and row count."""
        path = tmp_test_dir / "mi" / "mi.csv"
        write_mi(path, [mi_result, mi_result])
        with path.open(encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            assert tuple(reader.fieldnames or ()) == MI_COLUMNS
            assert len(list(reader)) == 6
