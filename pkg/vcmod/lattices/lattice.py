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

"""Lattice values and the named lattice families.

A Lattice is an immutable generator (rows span the lattice) kept as exact
fractions, together with the family it was derived from so the fastest exact
quantizer can be picked. Named lattices are written as
``<scale><base><n>[R<n>...]``:

- ``Z8``, ``4Z8``: scaled cubic lattices
- ``D8``: checkerboard lattice, even coordinate sum
- ``E8``, ``8E8``, ``2E8R8``: Gosset lattice in the D8 ∪ (D8 + ½) frame
- ``BW16``, ``16BW16``: Barnes-Wall lattice with minimum norm 8, volume 2¹²
- ``Leech24``, ``2Leech24R24``: Leech lattice with minimum norm 32,
  volume 2³⁶ (integer Golay frame)

Each ``R<n>`` suffix right-multiplies the generator by the rotation Rₙ.

Example:
    ```python
    from vcmod.lattices import lattice_from_name, partition_order

    e8 = lattice_from_name("E8")
    shaping = lattice_from_name("8E8")
    partition_order(lattice_from_name("Z8"), shaping)   # 16777216
    shaping.quantize([3.9, 0.2, 0, 0, 0, 0, 0, 0])
    ```
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
import re

import numpy as np

from vcmod.exceptions import ConfigError, LatticeError
from vcmod.lattices import matrix as mx
from vcmod.lattices.matrix import FractionMatrix
from vcmod.lattices.quantizers import (
    SphereDecoder,
    quantize_cubic,
    quantize_dn,
    quantize_e8,
)

_FAST_FAMILIES = {"cubic", "checkerboard", "gosset"}

_NAME_PATTERN = re.compile(r"^(\d+)?(Z|D|E|BW|Leech)(\d+)((?:R\d+)*)$")

# Cyclic generator polynomial of the length-23 Golay code (low degree first).
_GOLAY_POLY = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)


@dataclass(frozen=True)
class Lattice:
    """An n-dimensional lattice spanned by the rows of an exact generator.

    Attributes:
        base: Name of the unscaled, unrotated lattice ("Z8", "E8", "BW16",
            "Leech24", or a free-form name for loaded generators).
        family: One of "cubic", "checkerboard", "gosset", "barnes-wall",
            "leech" or "generic".
        generator: Exact n x n generator, scale and rotations applied.
        scale: Scalar applied to the base generator.
        rotations: Number of times Rₙ was applied on the right.
    """

    base: str
    family: str
    generator: FractionMatrix = field(repr=False)
    scale: Fraction = Fraction(1)
    rotations: int = 0

    def __post_init__(self) -> None:
        n = len(self.generator)
        if any(len(row) != n for row in self.generator):
            raise LatticeError(f"Generator of {self.base} is not square")
        if self.determinant == 0:
            raise LatticeError(f"Generator of {self.base} is singular")

    @property
    def dimension(self) -> int:
        """Lattice dimension n."""
        return len(self.generator)

    @property
    def name(self) -> str:
        """Canonical textual name, e.g. "2E8R8"."""
        prefix = "" if self.scale == 1 else str(self.scale)
        return f"{prefix}{self.base}" + f"R{self.dimension}" * self.rotations

    @property
    def tag(self) -> str:
        """Family tag: "rotated" for rotated lattices, else "<family>-scaled"."""
        if self.rotations:
            return "rotated"
        return self.family if self.family == "generic" else f"{self.family}-scaled"

    @cached_property
    def determinant(self) -> Fraction:
        """Absolute determinant of the generator (fundamental volume)."""
        return abs(mx.determinant(self.generator))

    @cached_property
    def matrix(self) -> np.ndarray:
        """Generator as a float64 array."""
        return mx.to_float(self.generator)

    @cached_property
    def is_integral(self) -> bool:
        """True when the lattice is a sublattice of Zⁿ."""
        return mx.is_integral(self.generator)

    @cached_property
    def hnf(self) -> np.ndarray:
        """Lower-triangular Hermite generator (integer lattices only).

        Raises:
            LatticeError: If the lattice is not inside Zⁿ.
        """
        if not self.is_integral:
            raise LatticeError(f"{self.name} is not an integer lattice")
        return mx.hermite_lower(mx.to_int(self.generator))

    @cached_property
    def sphere_decoder(self) -> SphereDecoder:
        """Exact closest-point decoder on a reduced basis of this lattice."""
        return SphereDecoder(self.matrix)

    @cached_property
    def _rotation_inverse(self) -> np.ndarray:
        r = build_rotation(self.dimension).astype(np.float64)
        return np.linalg.matrix_power(r.T / 2.0, self.rotations)

    @cached_property
    def _rotation_power(self) -> np.ndarray:
        r = build_rotation(self.dimension).astype(np.float64)
        return np.linalg.matrix_power(r, self.rotations)

    def quantize(self, y: np.ndarray | list[float]) -> np.ndarray:
        """Returns the nearest lattice point to each row of y.

        Cubic, checkerboard and Gosset lattices (scaled and rotated) undo the
        scale and rotations, quantize in the base frame, and map back. Other
        families use the sphere decoder.

        Args:
            y: Array of shape (n,) or (..., n).

        Returns:
            Array of the same shape.

        Raises:
            LatticeError: If y has non-finite coordinates.

        """
        y = np.asarray(y, dtype=np.float64)
        if self.family not in _FAST_FAMILIES:
            return self.sphere_decoder.closest(y)

        s = float(self.scale)
        base = y / s
        if self.rotations:
            base = base @ self._rotation_inverse
        if self.family == "cubic":
            q = quantize_cubic(base)
        elif self.family == "checkerboard":
            q = quantize_dn(base)
        else:
            q = quantize_e8(base)
        if self.rotations:
            q = q @ self._rotation_power
        return q * s

    def contains(self, x: np.ndarray | list[float]) -> bool:
        """Exact membership test: x·G⁻¹ is an integer vector."""
        coords = mx.as_fraction_matrix([np.asarray(x).ravel().tolist()])
        return mx.is_integral(mx.matmul(coords, self._inverse))

    @cached_property
    def _inverse(self) -> FractionMatrix:
        return mx.inverse(self.generator)

    def residue(self, points: np.ndarray) -> np.ndarray:
        """Canonical representatives of integer points modulo this lattice.

        Args:
            points: Integer array (..., n).

        Returns:
            Points reduced into the box 0 <= r_i < hnf[i, i].

        """
        return mx.residue(points, self.hnf)

    def minimum_norm(self) -> Fraction:
        """Squared norm of a shortest nonzero vector, found by enumeration.

        The enumerated vector is mapped back to integer coordinates in the
        generator, so the norm is summed over exact fractions.
        """
        vector, _ = self.sphere_decoder.shortest()
        coords = np.rint(vector @ mx.to_float(self._inverse)).astype(np.int64)
        row = mx.as_fraction_matrix([coords.tolist()])
        (exact,) = mx.matmul(row, self.generator)
        return sum((v * v for v in exact), Fraction(0))

    def scaled(self, factor: int | Fraction) -> Lattice:
        """Returns factor·Λ."""
        f = Fraction(factor)
        if f <= 0:
            raise LatticeError(f"Scale must be positive, got {factor}")
        return replace(
            self,
            generator=mx.scale_matrix(self.generator, f),
            scale=self.scale * f,
        )

    def rotated(self) -> Lattice:
        """Returns Λ·Rₙ (each coordinate pair rotated by 45° and scaled by √2)."""
        rotation = mx.as_fraction_matrix(build_rotation(self.dimension))
        return replace(
            self,
            generator=mx.matmul(self.generator, rotation),
            rotations=self.rotations + 1,
        )


def build_rotation(n: int) -> np.ndarray:
    """Returns Rₙ: n/2 diagonal copies of [[1, 1], [-1, 1]].

    Raises:
        LatticeError: If n is not a positive even integer.
    """
    if n <= 0 or n % 2:
        raise LatticeError(f"Rotation requires an even positive dimension, got {n}")
    r = np.zeros((n, n), dtype=np.int64)
    for i in range(0, n, 2):
        r[i, i] = 1
        r[i, i + 1] = 1
        r[i + 1, i] = -1
        r[i + 1, i + 1] = 1
    return r


def cvp_sphere_decode(lattice: Lattice, y: np.ndarray | list[float]) -> np.ndarray:
    """Exact nearest lattice point by sphere decoding, for any lattice.

    Raises:
        LatticeError: If y has non-finite coordinates.
    """
    return lattice.sphere_decoder.closest(np.asarray(y, dtype=np.float64))


def partition_order(parent: Lattice, child: Lattice) -> int:
    """Returns |parent/child| = |det J| where G_child = J·G_parent.

    Raises:
        LatticeError: If dimensions differ or J is not an integer matrix.
    """
    if parent.dimension != child.dimension:
        raise LatticeError(
            f"Dimension mismatch: {parent.name} has {parent.dimension}, "
            f"{child.name} has {child.dimension}"
        )
    j = mx.matmul(child.generator, parent._inverse)
    if not mx.is_integral(j):
        raise LatticeError(f"{child.name} is not a sublattice of {parent.name}")
    return int(abs(mx.determinant(j)))


def from_generator(
    rows: Iterable[Iterable[object]] | np.ndarray, base: str = "generic"
) -> Lattice:
    """Wraps an explicit generator (rows span the lattice) as a generic Lattice."""
    return Lattice(base=base, family="generic", generator=mx.as_fraction_matrix(rows))


@lru_cache(maxsize=None)
def cubic(n: int) -> Lattice:
    """Zⁿ."""
    if n < 1:
        raise LatticeError(f"Dimension must be positive, got {n}")
    rows = np.eye(n, dtype=np.int64)
    return Lattice(f"Z{n}", "cubic", mx.as_fraction_matrix(rows))


@lru_cache(maxsize=None)
def checkerboard(n: int) -> Lattice:
    """Dₙ with the lower-triangular generator 2e₀, e₀ + eᵢ."""
    if n < 2:
        raise LatticeError(f"Dn requires n >= 2, got {n}")
    rows = np.eye(n, dtype=np.int64)
    rows[0, 0] = 2
    rows[1:, 0] = 1
    return Lattice(f"D{n}", "checkerboard", mx.as_fraction_matrix(rows))


@lru_cache(maxsize=None)
def gosset() -> Lattice:
    """E₈ in the D₈ ∪ (D₈ + ½) frame, determinant 1."""
    rows: list[list[Fraction]] = [[Fraction(0)] * 8 for _ in range(8)]
    rows[0][0] = Fraction(2)
    for i in range(1, 7):
        rows[i][i - 1] = Fraction(-1)
        rows[i][i] = Fraction(1)
    rows[7] = [Fraction(1, 2)] * 8
    return Lattice("E8", "gosset", tuple(tuple(r) for r in rows))


def _reed_muller_1_4() -> np.ndarray:
    index = np.arange(16)
    bits = [(index >> k) & 1 for k in range(4)]
    return np.vstack([np.ones(16, dtype=np.int64), *bits]).astype(np.int64)


def _golay_basis() -> np.ndarray:
    rows = np.zeros((12, 24), dtype=np.int64)
    for shift in range(12):
        rows[shift, shift : shift + 12] = _GOLAY_POLY
        rows[shift, 23] = rows[shift, :23].sum() % 2
    return rows


def _even_pairs(n: int, weight: int) -> np.ndarray:
    rows = []
    for i in range(1, n):
        v = np.zeros(n, dtype=np.int64)
        v[0] = v[i] = weight
        rows.append(v)
    v = np.zeros(n, dtype=np.int64)
    v[0], v[1] = weight, -weight
    rows.append(v)
    return np.vstack(rows)


def _assert_volume(lattice: Lattice, expected: int) -> Lattice:
    if lattice.determinant != expected:
        raise LatticeError(
            f"{lattice.name} has volume {lattice.determinant}, expected {expected}"
        )
    return lattice


@lru_cache(maxsize=None)
def barnes_wall() -> Lattice:
    """BW₁₆ = {x : x mod 2 ∈ RM(1,4), Σx ≡ 0 mod 4}, min norm 8."""
    spanning = np.vstack([_reed_muller_1_4(), _even_pairs(16, 2)])
    generator = mx.hermite_lower(spanning)
    return _assert_volume(
        Lattice("BW16", "barnes-wall", mx.as_fraction_matrix(generator)), 2**12
    )


@lru_cache(maxsize=None)
def leech() -> Lattice:
    """Λ₂₄ scaled by √8 into Z²⁴, min norm 32."""
    odd = np.ones((1, 24), dtype=np.int64)
    odd[0, 0] = -3
    spanning = np.vstack([2 * _golay_basis(), _even_pairs(24, 4), odd])
    generator = mx.hermite_lower(spanning)
    return _assert_volume(
        Lattice("Leech24", "leech", mx.as_fraction_matrix(generator)), 2**36
    )


def lattice_from_name(name: str) -> Lattice:
    """Builds a lattice from a textual name such as "8E8" or "2Leech24R24".

    Raises:
        ConfigError: If the name does not parse or names an unknown lattice.
    """
    match = _NAME_PATTERN.match(name.strip())
    if not match:
        raise ConfigError(f"Unknown lattice name: {name!r}")
    scale_text, family, dim_text, rotation_text = match.groups()
    n = int(dim_text)

    if family == "Z":
        lattice = cubic(n)
    elif family == "D":
        lattice = checkerboard(n)
    elif family == "E" and n == 8:
        lattice = gosset()
    elif family == "BW" and n == 16:
        lattice = barnes_wall()
    elif family == "Leech" and n == 24:
        lattice = leech()
    else:
        raise ConfigError(f"Unknown lattice name: {name!r}")

    if scale_text and int(scale_text) != 1:
        lattice = lattice.scaled(int(scale_text))
    for suffix in re.findall(r"R(\d+)", rotation_text):
        if int(suffix) != n:
            raise ConfigError(f"Rotation R{suffix} does not match dimension {n}")
        lattice = lattice.rotated()
    return lattice


def load_generator(path: Path, base: str | None = None) -> Lattice:
    """Reads a generator from a plain-text matrix file.

    One row per line, entries separated by whitespace or commas; integers and
    rationals like ``1/2`` are accepted. Blank lines and ``#`` comments are
    skipped.

    Raises:
        ConfigError: If the file does not exist.
        LatticeError: If an entry does not parse or the matrix is not square
            and nonsingular.
    """
    if not path.exists():
        raise ConfigError(f"Generator file not found: {path}")
    rows: list[list[str]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        rows.append(text.replace(",", " ").split())
        try:
            [Fraction(v) for v in rows[-1]]
        except (ValueError, ZeroDivisionError) as err:
            raise LatticeError(f"{path}:{lineno}: bad matrix entry ({err})") from err
    return from_generator(rows, base=base or path.stem)
