"""Tests for vcmod.fec.alist."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from vcmod.exceptions import CodeError
from vcmod.fec import HAMMING_7_4, builtin_code, load_parity, parse_alist, save_alist

DATA = Path(__file__).resolve().parent.parent / "data"
HAMMING_FILE = DATA / "hamming-7-4.alist"


def _write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "code.alist"
    path.write_text(text, encoding="utf-8")
    return path


class TestParseAlist:
    """Tests for parse_alist."""

    def test_hamming_file(self):
        """Tests that the reference file gives the Hamming parity matrix."""
        matrix = parse_alist(HAMMING_FILE)
        np.testing.assert_array_equal(matrix.toarray(), HAMMING_7_4)

    def test_column_section_only(self, tmp_path):
        """Tests that the row section may be omitted."""
        lines = HAMMING_FILE.read_text(encoding="utf-8").splitlines()[:11]
        matrix = parse_alist(_write(tmp_path, "\n".join(lines)))
        np.testing.assert_array_equal(matrix.toarray(), HAMMING_7_4)

    def test_missing_file(self, tmp_path):
        """Tests that a missing file raises CodeError."""
        with pytest.raises(CodeError, match="not found"):
            parse_alist(tmp_path / "absent.alist")

    def test_missing_header(self, tmp_path):
        """Tests that a truncated header raises CodeError."""
        with pytest.raises(CodeError, match="header"):
            parse_alist(_write(tmp_path, "7 3\n"))

    def test_non_integer(self, tmp_path):
        """Tests that a non-integer entry names its line."""
        text = HAMMING_FILE.read_text(encoding="utf-8").replace("1 3 0", "1 x 0")
        with pytest.raises(CodeError, match=":6: non-integer"):
            parse_alist(_write(tmp_path, text))

    def test_degree_mismatch(self, tmp_path):
        """Tests that a column listing more rows than its degree is rejected."""
        text = HAMMING_FILE.read_text(encoding="utf-8").replace(
            "1 2 0\n", "1 2 3\n", 1
        )
        with pytest.raises(CodeError, match="Column 1 lists 3 entries"):
            parse_alist(_write(tmp_path, text))

    def test_index_out_of_range(self, tmp_path):
        """Tests that a row index beyond M is rejected."""
        text = HAMMING_FILE.read_text(encoding="utf-8").replace(
            "1 0 0\n", "4 0 0\n", 1
        )
        with pytest.raises(CodeError, match="outside 1..3"):
            parse_alist(_write(tmp_path, text))

    def test_sections_disagree(self, tmp_path):
        """Tests that row lines contradicting the columns are rejected."""
        text = HAMMING_FILE.read_text(encoding="utf-8").replace(
            "1 2 4 5", "1 2 4 6"
        )
        with pytest.raises(CodeError, match="disagree"):
            parse_alist(_write(tmp_path, text))


class TestLoadAndSave:
    """Tests for load_parity and save_alist."""

    def test_load_names_code_after_stem(self):
        """Tests that the code name defaults to the file stem."""
        code = load_parity(HAMMING_FILE)
        assert code.name == "hamming-7-4"
        assert (code.N, code.K) == (7, 4)

    def test_save_reproduces_reference(self, tmp_path):
        """Tests that saving the built-in Hamming code gives the reference text."""
        out = tmp_path / "nested" / "hamming.alist"
        save_alist(builtin_code("hamming-7-4"), out)
        assert out.read_text(encoding="utf-8") == HAMMING_FILE.read_text(
            encoding="utf-8"
        )

    def test_builtin_code_reads_alist_path(self):
        """Tests that builtin_code accepts an alist path."""
        code = builtin_code(str(HAMMING_FILE))
        np.testing.assert_array_equal(code.parity.toarray(), HAMMING_7_4)
