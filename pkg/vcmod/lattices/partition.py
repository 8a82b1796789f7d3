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

"""Lattice partitions, coset tables and partition chains.

A partition Λ/Λ′ splits the parent Λ into |det J| cosets of the child Λ′,
where G_Λ′ = J·G_Λ. A CosetTable lists one integer representative per coset
(the all-zero point first, carrying the all-zero label) and finds the coset
of any integer point by exact reduction modulo the child's Hermite form.

A partition chain Λ⁰/Λ¹/.../Λ^q stacks partitions and ends at 2^p·Zⁿ. The
built-in chains are:

| Name | Lattices | k | d² |
| --- | --- | --- | --- |
| ``table-I-n2`` | Z²/D₂/2Z² | 1, 1 | 2, 4 |
| ``table-I-n2-p2`` | Z²/D₂/2Z²/2D₂/4Z² | 1, 1, 1, 1 | 2, 4, 8, 16 |
| ``table-I-n8`` | Z⁸/D₈/E₈R₈/2E₈/2E₈R₈/4Z⁸ | 1, 3, 4, 4, 4 | 2, 4, 8, 16, 16 |
| ``table-IV-n8`` | Z⁸/D₈/E₈R₈/2Z⁸ | 1, 3, 4 | 2, 4, 4 |
| ``checkerboard-n<n>`` | Zⁿ/Dₙ/2Zⁿ | 1, n-1 | 2, 4 |
| ``cubic-n<n>`` | Zⁿ/2Zⁿ | n | 4 |

Example:
    ```python
    from vcmod.lattices import build_partition_chain

    chain = build_partition_chain("table-IV-n8")
    chain.widths        # (1, 3, 4)
    chain.tables[1].representatives.shape   # (8, 8)
    ```
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
import re

import numpy as np

from vcmod.exceptions import ConfigError, InternalConsistencyError, LatticeError
from vcmod.lattices import matrix as mx
from vcmod.lattices.lattice import Lattice, lattice_from_name, partition_order
from vcmod.logging import get_global_logger

MAX_TABLE_ORDER = 2**16

NAMED_CHAINS: dict[str, tuple[str, ...]] = {
    "table-I-n2": ("Z2", "D2", "2Z2"),
    "table-I-n2-p2": ("Z2", "D2", "2Z2", "2D2", "4Z2"),
    "table-I-n8": ("Z8", "D8", "E8R8", "2E8", "2E8R8", "4Z8"),
    "table-IV-n8": ("Z8", "D8", "E8R8", "2Z8"),
}

_GENERATED_CHAIN = re.compile(r"^(checkerboard|cubic)-n(\d+)$")


@dataclass(frozen=True)
class LatticePartitionStep:
    """One partition Λ/Λ′ of a chain.

    Attributes:
        parent: The containing lattice Λ.
        child: The sublattice Λ′.
        order: |Λ/Λ′| = |det J|.
        bits: log₂(order), or None when order is not a power of 2.
        msed: Minimum squared norm of the child (intra-coset distance).
    """

    parent: Lattice
    child: Lattice
    order: int
    bits: int | None
    msed: Fraction


def make_partition_step(parent: Lattice, child: Lattice) -> LatticePartitionStep:
    """Builds a partition step, measuring order and intra-coset distance.

    Raises:
        LatticeError: If child is not a sublattice of parent.
    """
    order = partition_order(parent, child)
    bits = order.bit_length() - 1 if order & (order - 1) == 0 else None
    return LatticePartitionStep(parent, child, order, bits, child.minimum_norm())


def _label_bits(index: int, width: int) -> tuple[int, ...]:
    return tuple((index >> (width - 1 - b)) & 1 for b in range(width))


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Coset representatives of Λ/Λ′ with their bit labels.

    Row i of ``representatives`` carries label row i of ``labels``, which is
    the width-k big-endian binary form of i. Row 0 is the zero point.

    Attributes:
        representatives: Integer array (2^k, n), pairwise non-congruent
            modulo the child.
        labels: uint8 array (2^k, k).
        modulus: Lower-triangular Hermite generator of the child.
    """

    representatives: np.ndarray
    labels: np.ndarray
    modulus: np.ndarray

    @property
    def width(self) -> int:
        """Label width k."""
        return int(self.labels.shape[1])

    @property
    def size(self) -> int:
        """Number of representatives, 2^k."""
        return int(self.representatives.shape[0])

    def label_of(self, index: int) -> tuple[int, ...]:
        """Returns the label of representative ``index``."""
        return tuple(int(b) for b in self.labels[index])

    def index_of(self, label: Sequence[int]) -> int:
        """Returns the representative index carrying ``label``."""
        if len(label) != self.width:
            raise LatticeError(f"Label width {len(label)} != table width {self.width}")
        value = 0
        for bit in label:
            value = (value << 1) | int(bit)
        return value

    def locate(self, points: np.ndarray) -> np.ndarray:
        """Finds the representative congruent to each integer point.

        Every point is reduced modulo the child and compared with every
        representative; exactly one must match.

        Args:
            points: Integer array (..., n).

        Returns:
            Integer array (...) of representative indices.

        Raises:
            InternalConsistencyError: If a point matches zero or several
                representatives.

        """
        points = np.asarray(points, dtype=np.int64)
        reduced = mx.residue(points, self.modulus)
        matches = np.all(reduced[..., None, :] == self.representatives, axis=-1)
        counts = matches.sum(axis=-1)
        if np.any(counts != 1):
            bad = int(np.argmax(np.ravel(counts != 1)))
            raise InternalConsistencyError(
                f"Coset lookup matched {int(np.ravel(counts)[bad])} representatives "
                f"for point {points.reshape(-1, points.shape[-1])[bad].tolist()}"
            )
        return np.argmax(matches, axis=-1)


def build_coset_table(step: LatticePartitionStep) -> CosetTable:
    """Enumerates the coset representatives of a partition step.

    Parent points v·G_parent are taken for v inside the box given by the
    Hermite form of J, which hits every coset once; each point is then
    replaced by its canonical residue modulo the child. Representatives are
    sorted lexicographically (the zero point comes first) and labelled with
    ascending binary labels.

    Raises:
        LatticeError: If the order is not a power of 2, exceeds 2¹⁶, or a
            lattice is not integral.
    """
    if step.bits is None:
        raise LatticeError(
            f"Partition {step.parent.name}/{step.child.name} has order "
            f"{step.order}, not a power of 2"
        )
    if step.order > MAX_TABLE_ORDER:
        raise LatticeError(
            f"Partition order {step.order} exceeds the table limit {MAX_TABLE_ORDER}"
        )
    if not (step.parent.is_integral and step.child.is_integral):
        raise LatticeError("Coset tables require integer lattices")

    j = mx.matmul(step.child.generator, mx.inverse(step.parent.generator))
    box = np.diag(mx.hermite_lower(mx.to_int(j)))
    grids = np.meshgrid(*[np.arange(d) for d in box], indexing="ij")
    coeffs = np.stack([g.ravel() for g in grids], axis=-1).astype(np.int64)
    points = coeffs @ mx.to_int(step.parent.generator)
    reps = step.child.residue(points)

    reps = np.unique(reps, axis=0)
    if reps.shape[0] != step.order:
        raise InternalConsistencyError(
            f"Expected {step.order} cosets, found {reps.shape[0]}"
        )
    labels = np.array(
        [_label_bits(i, step.bits) for i in range(step.order)], dtype=np.uint8
    ).reshape(step.order, step.bits)
    return CosetTable(reps, labels, step.child.hnf)


@dataclass(frozen=True, eq=False)
class PartitionChainSpec:
    """A partition chain Λ⁰/Λ¹/.../Λ^q ending at 2^p·Zⁿ.

    Attributes:
        name: Chain name.
        lattices: Λ⁰ ... Λ^q.
        steps: The q partition steps.
        tables: Coset tables C₁ ... C_q.
        p: Terminal exponent.
    """

    name: str
    lattices: tuple[Lattice, ...]
    steps: tuple[LatticePartitionStep, ...]
    tables: tuple[CosetTable, ...]
    p: int

    @property
    def n(self) -> int:
        """Dimension."""
        return self.lattices[0].dimension

    @property
    def widths(self) -> tuple[int, ...]:
        """Per-step label widths k_i."""
        return tuple(int(step.bits or 0) for step in self.steps)

    @property
    def msed(self) -> tuple[Fraction, ...]:
        """Per-step minimum squared distances d_i²."""
        return tuple(step.msed for step in self.steps)

    @property
    def coded_bits(self) -> int:
        """Σ k_i = n·p."""
        return sum(self.widths)


def _is_scaled_cubic(lattice: Lattice, p: int) -> bool:
    if not lattice.is_integral:
        return False
    return bool(np.array_equal(lattice.hnf, (2**p) * np.eye(lattice.dimension)))


def _chain_lattice_names(name: str) -> tuple[str, ...]:
    if name in NAMED_CHAINS:
        return NAMED_CHAINS[name]
    match = _GENERATED_CHAIN.match(name)
    if not match:
        raise ConfigError(
            f"Unknown partition chain: {name!r} (known: "
            f"{', '.join(sorted(NAMED_CHAINS))}, checkerboard-n<n>, cubic-n<n>)"
        )
    kind, n = match.group(1), int(match.group(2))
    if kind == "cubic":
        return (f"Z{n}", f"2Z{n}")
    return (f"Z{n}", f"D{n}", f"2Z{n}")


def build_partition_chain(
    chain: str | Sequence[Lattice],
    name: str | None = None,
) -> PartitionChainSpec:
    """Builds a partition chain by name or from an explicit lattice list.

    Args:
        chain: A chain name (see module docs) or the lattices Λ⁰ ... Λ^q.
        name: Display name for explicit lists.

    Returns:
        The chain with its coset tables.

    Raises:
        ConfigError: If the name is unknown.
        LatticeError: If containment fails, a step order is not a power of 2,
            Λ⁰ is not Zⁿ, or the chain does not end at 2^p·Zⁿ.

    """
    logger = get_global_logger()
    if isinstance(chain, str):
        lattices = tuple(lattice_from_name(n) for n in _chain_lattice_names(chain))
        label = chain
    else:
        lattices = tuple(chain)
        label = name or "/".join(lat.name for lat in lattices)
    if len(lattices) < 2:
        raise LatticeError("A partition chain needs at least two lattices")
    if not _is_scaled_cubic(lattices[0], 0):
        raise LatticeError(f"Chain must start at Zⁿ, got {lattices[0].name}")

    steps = tuple(
        make_partition_step(parent, child)
        for parent, child in zip(lattices[:-1], lattices[1:], strict=True)
    )
    total = 1
    for step in steps:
        if step.bits is None:
            raise LatticeError(
                f"Step {step.parent.name}/{step.child.name} has order {step.order}"
            )
        total *= step.order
    p, rem = divmod(total.bit_length() - 1, lattices[0].dimension)
    if rem or not _is_scaled_cubic(lattices[-1], p):
        raise LatticeError(f"Chain {label} does not end at a scaled cubic lattice")

    tables = tuple(build_coset_table(step) for step in steps)
    spec = PartitionChainSpec(label, lattices, steps, tables, p)
    logger.verbose(
        "LATTICE",
        f"Chain {label}: k={spec.widths} d2={tuple(str(d) for d in spec.msed)} p={p}",
    )
    return spec
