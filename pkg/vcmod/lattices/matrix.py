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

"""Exact matrix helpers for lattice generators.

Generators in vcmod are rational matrices. Determinants, inverses and
sublattice checks are done with fractions.Fraction so containment and coset
tests never depend on floating-point tolerance. Integer lattices are also put
into lower-triangular Hermite form, which gives a canonical generator and a
cheap exact reduction of integer points modulo the lattice.

Example:
    Canonical form and residues:
        ```python
        import numpy as np
        from vcmod.lattices.matrix import hermite_lower, residue

        hnf = hermite_lower([[4, 4], [4, -4]])
        # array([[8, 0], [4, 4]])
        residue(np.array([9, 5]), hnf)
        # array([5, 1])
        ```
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction

import numpy as np

from vcmod.exceptions import LatticeError

FractionMatrix = tuple[tuple[Fraction, ...], ...]

_INT64_LIMIT = 2**62


def as_fraction_matrix(rows: Iterable[Iterable[object]]) -> FractionMatrix:
    """Converts a nested sequence of numbers to an exact fraction matrix.

    Floats are converted exactly (0.5 becomes 1/2); strings such as "3/2"
    are parsed by Fraction.

    Raises:
        LatticeError: If the rows are ragged or empty.
    """
    matrix: list[tuple[Fraction, ...]] = []
    for row in rows:
        matrix.append(tuple(Fraction(_as_exact(value)) for value in row))
    if not matrix or any(len(row) != len(matrix[0]) for row in matrix):
        raise LatticeError("Matrix rows must be non-empty and of equal length")
    return tuple(matrix)


def _as_exact(value: object) -> int | float | str | Fraction:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, int | float | str | Fraction):
        return value
    raise LatticeError(f"Unsupported matrix entry: {value!r}")


def to_float(matrix: FractionMatrix) -> np.ndarray:
    """Returns a float64 copy of an exact matrix."""
    return np.array([[float(v) for v in row] for row in matrix], dtype=np.float64)


def is_integral(matrix: FractionMatrix) -> bool:
    """Returns True when every entry has denominator 1."""
    return all(v.denominator == 1 for row in matrix for v in row)


def to_int(matrix: FractionMatrix) -> np.ndarray:
    """Returns an int64 copy of an integral exact matrix.

    Raises:
        LatticeError: If an entry is not an integer.
    """
    if not is_integral(matrix):
        raise LatticeError("Matrix has non-integer entries")
    return np.array([[int(v) for v in row] for row in matrix], dtype=np.int64)


def scale_matrix(matrix: FractionMatrix, factor: Fraction | int) -> FractionMatrix:
    """Multiplies every entry by factor."""
    f = Fraction(factor)
    return tuple(tuple(v * f for v in row) for row in matrix)


def matmul(a: FractionMatrix, b: FractionMatrix) -> FractionMatrix:
    """Exact matrix product a·b."""
    if len(a[0]) != len(b):
        raise LatticeError(
            f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}"
        )
    columns = list(zip(*b, strict=True))
    return tuple(
        tuple(
            sum((x * y for x, y in zip(row, col, strict=True)), Fraction(0))
            for col in columns
        )
        for row in a
    )


def determinant(matrix: FractionMatrix) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination.

    Raises:
        LatticeError: If the matrix is not square.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise LatticeError("Determinant requires a square matrix")
    work = [list(row) for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det *= work[col][col]
        for r in range(col + 1, n):
            factor = work[r][col] / work[col][col]
            if factor:
                for c in range(col, n):
                    work[r][c] -= factor * work[col][c]
    return det


def inverse(matrix: FractionMatrix) -> FractionMatrix:
    """Exact inverse by Gauss-Jordan elimination.

    Raises:
        LatticeError: If the matrix is not square or is singular.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise LatticeError("Inverse requires a square matrix")
    work = [
        list(row) + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise LatticeError("Matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        lead = work[col][col]
        work[col] = [v / lead for v in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [
                    v - factor * p for v, p in zip(work[r], work[col], strict=True)
                ]
    return tuple(tuple(row[n:]) for row in work)


def hermite_lower(rows: Sequence[Sequence[int]] | np.ndarray) -> np.ndarray:
    """Puts an integer spanning set into lower-triangular Hermite form.

    The rows of the input span a full-rank integer lattice (there may be more
    rows than columns). The result H spans the same lattice, is lower
    triangular with a positive diagonal, and every entry below the diagonal
    satisfies 0 <= H[i, j] < H[j, j]. The form is unique, so two spanning
    sets of the same lattice give identical results.

    Columns are cleared from the last one down with row Euclid steps, so the
    pivot chosen for column j only has nonzeros in columns <= j.

    Args:
        rows: Integer matrix whose rows span the lattice.

    Returns:
        An n x n int64 matrix.

    Raises:
        LatticeError: If the rows do not span a full-rank lattice.

    """
    active = [[int(v) for v in row] for row in np.asarray(rows, dtype=object)]
    if not active:
        raise LatticeError("Empty spanning set")
    n = len(active[0])
    basis: list[list[int] | None] = [None] * n

    for col in range(n - 1, -1, -1):
        while True:
            nonzero = [r for r in active if r[col] != 0]
            if len(nonzero) <= 1:
                break
            pivot = min(nonzero, key=lambda r: abs(r[col]))
            for row in nonzero:
                if row is pivot:
                    continue
                q = row[col] // pivot[col]
                for c in range(col + 1):
                    row[c] -= q * pivot[c]
        if not nonzero:
            raise LatticeError(
                f"Generator is singular (no pivot for column {col})"
            )
        pivot = nonzero[0]
        if pivot[col] < 0:
            pivot[:] = [-v for v in pivot]
        basis[col] = pivot
        active = [r for r in active if r is not pivot]

    hnf = [row for row in basis if row is not None]
    for i in range(n):
        for j in range(i - 1, -1, -1):
            q = hnf[i][j] // hnf[j][j]
            if q:
                hnf[i] = [a - q * b for a, b in zip(hnf[i], hnf[j], strict=True)]

    if any(abs(v) >= _INT64_LIMIT for row in hnf for v in row):
        raise LatticeError("Hermite form entries exceed the int64 range")
    return np.array(hnf, dtype=np.int64)


def residue(points: np.ndarray, hnf: np.ndarray) -> np.ndarray:
    """Reduces integer points to the canonical box modulo a lattice.

    For a lower-triangular generator H with positive diagonal, every integer
    point is congruent to exactly one point r with 0 <= r_i < H[i, i]. The
    reduction subtracts multiples of row i of H from the last coordinate down
    to the first; later steps never touch coordinates already reduced.

    Args:
        points: Integer array of shape (..., n).
        hnf: Lower-triangular int64 generator with positive diagonal.

    Returns:
        Integer array of the same shape holding the reduced points.

    """
    r = np.array(points, dtype=np.int64, copy=True)
    n = hnf.shape[0]
    for i in range(n - 1, -1, -1):
        q = np.floor_divide(r[..., i], hnf[i, i])
        r -= q[..., None] * hnf[i]
    return r
