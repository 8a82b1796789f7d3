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

"""Reading and writing parity-check matrices in alist format.

An alist file lists a sparse binary matrix column by column and row by row:

```text
N M
max_column_degree max_row_degree
column degrees (N values)
row degrees (M values)
N lines: 1-based row indices of each column, zero padded
M lines: 1-based column indices of each row, zero padded
```

The row section is optional on input; when present it must describe the
same matrix as the column section.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import scipy.sparse as sp

from vcmod.exceptions import CodeError
from vcmod.fec.ldpc import LdpcCode
from vcmod.logging import get_global_logger


def _read_ints(path: Path) -> list[list[int]]:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as err:
        raise CodeError(f"Cannot read parity file {path}: {err}") from err
    rows = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rows.append([int(v) for v in line.split()])
        except ValueError as err:
            raise CodeError(f"{path}:{number}: non-integer entry") from err
    return rows


def _entries(
    lines: list[list[int]], degrees: list[int], limit: int, what: str
) -> list[list[int]]:
    result = []
    for index, (line, degree) in enumerate(zip(lines, degrees, strict=True)):
        values = [v for v in line if v != 0]
        if len(values) != degree:
            raise CodeError(
                f"{what} {index + 1} lists {len(values)} entries, degree is {degree}"
            )
        if any(v < 1 or v > limit for v in values):
            raise CodeError(f"{what} {index + 1} has an index outside 1..{limit}")
        if len(set(values)) != len(values):
            raise CodeError(f"{what} {index + 1} repeats an index")
        result.append([v - 1 for v in values])
    return result


def parse_alist(path: Path) -> sp.csr_matrix:
    """Parses an alist file into a CSR matrix of shape (M, N).

    Raises:
        CodeError: If the file is missing, malformed, or its sections
            disagree.
    """
    if not path.exists():
        raise CodeError(f"Parity file not found: {path}")
    rows = _read_ints(path)
    if len(rows) < 4 or len(rows[0]) != 2 or len(rows[1]) != 2:
        raise CodeError(f"{path}: missing alist header")
    n, m = rows[0]
    if n <= 0 or m <= 0:
        raise CodeError(f"{path}: invalid dimensions {n} x {m}")
    col_degrees, row_degrees = rows[2], rows[3]
    if len(col_degrees) != n or len(row_degrees) != m:
        raise CodeError(f"{path}: degree lists do not match N={n}, M={m}")
    body = rows[4:]
    if len(body) < n:
        raise CodeError(f"{path}: expected {n} column lines, found {len(body)}")

    columns = _entries(body[:n], col_degrees, m, "Column")
    r_idx = np.array([r for col in columns for r in col], dtype=np.int64)
    c_idx = np.repeat(np.arange(n), [len(col) for col in columns])
    matrix = sp.csr_matrix(
        (np.ones(r_idx.size, dtype=np.uint8), (r_idx, c_idx)), shape=(m, n)
    )

    if len(body) > n:
        if len(body) != n + m:
            raise CodeError(f"{path}: expected {m} row lines after the columns")
        row_lists = _entries(body[n:], row_degrees, n, "Row")
        check_r = np.repeat(np.arange(m), [len(r) for r in row_lists])
        check_c = np.array([c for r in row_lists for c in r], dtype=np.int64)
        by_rows = sp.csr_matrix(
            (np.ones(check_r.size, dtype=np.uint8), (check_r, check_c)), shape=(m, n)
        )
        if (matrix != by_rows).nnz:
            raise CodeError(f"{path}: row and column sections disagree")
    return matrix


def load_parity(path: Path, name: str | None = None) -> LdpcCode:
    """Loads and validates an LDPC code from an alist file.

    Args:
        path: The alist file.
        name: Code name; defaults to the file stem.

    Returns:
        The code, logged with its N, K, rate and degree profile.

    Raises:
        CodeError: If the file is malformed or the dimensions are
            inconsistent.

    """
    code = LdpcCode(name or path.stem, parse_alist(path))
    var, chk = code.degree_profile()
    get_global_logger().verbose(
        "LDPC",
        f"Loaded {code.name}: N={code.N} K={code.K} rate={code.rate} "
        f"variable degrees={var} check degrees={chk}",
    )
    return code


def save_alist(code: LdpcCode, path: Path) -> None:
    """Writes the parity-check matrix of a code in alist format."""
    h = code.parity.tocsc()
    columns = [h.indices[h.indptr[j] : h.indptr[j + 1]] + 1 for j in range(code.N)]
    hr = code.parity
    rows = [hr.indices[hr.indptr[i] : hr.indptr[i + 1]] + 1 for i in range(code.M)]
    max_col = max(len(c) for c in columns)
    max_row = max(len(r) for r in rows)

    def padded(values: np.ndarray, width: int) -> str:
        entries = sorted(int(v) for v in values) + [0] * (width - len(values))
        return " ".join(str(v) for v in entries)

    lines = [
        f"{code.N} {code.M}",
        f"{max_col} {max_row}",
        " ".join(str(len(c)) for c in columns),
        " ".join(str(len(r)) for r in rows),
        *(padded(c, max_col) for c in columns),
        *(padded(r, max_row) for r in rows),
    ]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
