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

"""Voronoi constellations over the cubic coding lattice Zⁿ.

A Voronoi constellation (VC) Zⁿ/Λₛ holds one point of Zⁿ − a per coset of
the shaping lattice Λₛ, namely the one inside the Voronoi region of the
origin. With Λₛ in lower-triangular form Gs (diagonal h), the box
U = {u : 0 <= u <= h - 1} is a complete set of coset representatives, so
integer indices u are the natural labels of the points:

- ``encode_g``: x = (u − a) − Q_Λₛ(u − a)
- ``decode_w``: u = ⌊y + a⌉ reduced modulo Gs, last coordinate first

Example:
    ```python
    import numpy as np
    from vcmod.vc import build_vc, decode_w, encode_g

    vc = build_vc("4D2", name="example-1")
    vc.h                               # array([8, 4])
    x = encode_g(vc, np.array([3, 2]))
    decode_w(vc, x)                    # array([3, 2])
    ```
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
import math

import numpy as np

from vcmod.exceptions import ConstellationError, LatticeError, UnsupportedError
from vcmod.lattices import Lattice, lattice_from_name, residue, round_half_up
from vcmod.lattices.matrix import hermite_lower, to_int
from vcmod.logging import get_global_logger
from vcmod.results import EnergyEstimate

MAX_EXACT_POINTS = 2**20
DEFAULT_ENERGY_TRIALS = 100_000


def triangularize(generator: np.ndarray | list[list[int]]) -> np.ndarray:
    """Returns the lower-triangular Hermite form Gs of an integer generator.

    Gs spans the same lattice, has a positive diagonal, and every entry
    below the diagonal is reduced modulo the diagonal entry of its column.

    Raises:
        ConstellationError: If the generator is not square or not integral.
        LatticeError: If the generator is singular.
    """
    g = np.asarray(generator)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ConstellationError(f"Generator must be square, got shape {g.shape}")
    if not np.all(np.equal(np.mod(g, 1), 0)):
        raise ConstellationError("Shaping generator must be an integer matrix")
    return hermite_lower(g.astype(np.int64))


@dataclass(frozen=True, eq=False)
class VoronoiConstellation:
    """The constellation Zⁿ/Λₛ with offset a.

    Attributes:
        name: Catalog or display name.
        shaping: Shaping lattice Λₛ (integer).
        gs: Lower-triangular integer generator of Λₛ.
        offset: Offset a (real n-vector).
    """

    name: str
    shaping: Lattice
    gs: np.ndarray = field(repr=False)
    offset: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        """Dimension."""
        return int(self.gs.shape[0])

    @property
    def h(self) -> np.ndarray:
        """Diagonal of Gs; each entry is a power of 2."""
        return np.diag(self.gs).copy()

    @cached_property
    def M(self) -> int:
        """Number of points, Π h_i."""
        return math.prod(int(v) for v in self.h)

    @property
    def m(self) -> int:
        """Bits per point, log₂ M."""
        return self.M.bit_length() - 1

    @property
    def beta(self) -> float:
        """Spectral efficiency 2m/n in bits per two dimensions."""
        return 2 * self.m / self.n

    @property
    def bit_widths(self) -> tuple[int, ...]:
        """Per-dimension Gray block widths log₂ h_i."""
        return tuple(int(v).bit_length() - 1 for v in self.h)

    @cached_property
    def _is_diagonal(self) -> bool:
        return bool(np.count_nonzero(self.gs - np.diag(self.h)) == 0)

    @cached_property
    def es(self) -> float:
        """Average symbol energy (exact when enumerable, else Monte-Carlo)."""
        return average_energy(self).value

    def check_index(self, u: np.ndarray) -> np.ndarray:
        """Validates integer indices against the box 0 <= u <= h - 1.

        Raises:
            ConstellationError: If any index is out of range or u has the
                wrong width.
        """
        u = np.asarray(u)
        if u.shape[-1] != self.n:
            raise ConstellationError(
                f"Index width {u.shape[-1]} does not match dimension {self.n}"
            )
        if np.any(u < 0) or np.any(u >= self.h):
            raise ConstellationError(f"Index out of range for h={self.h.tolist()}")
        return u.astype(np.int64)

    def shaping_quantize(self, v: np.ndarray) -> np.ndarray:
        """Q_Λₛ(v); coordinate-wise when Gs is diagonal."""
        if self._is_diagonal:
            return self.h * round_half_up(v / self.h)
        return self.shaping.quantize(v)

    def encode(self, u: np.ndarray) -> np.ndarray:
        """Maps indices to constellation points, see encode_g."""
        v = self.check_index(u) - self.offset
        return v - self.shaping_quantize(v)

    def decode(self, y: np.ndarray) -> np.ndarray:
        """Maps received points to indices, see decode_w."""
        lam = round_half_up(np.asarray(y, dtype=np.float64) + self.offset)
        return residue(lam.astype(np.int64), self.gs)

    def nearest_in_coset(
        self, y: np.ndarray, coset: np.ndarray, p: int
    ) -> np.ndarray:
        """Nearest point of 2^p·Zⁿ + ĉ − a to y (modulo Λₛ for VCs)."""
        step = float(2**p)
        z = step * round_half_up((y + self.offset - coset) / step) + coset
        return z - self.offset


class QamConstellation(VoronoiConstellation):
    """Gray QAM/PAM product Zⁿ/diag(h) with a clipping slicer.

    The offset is (h − 1)/2 so points sit at the odd-integer-centred grid
    −(h−1)/2 ... (h−1)/2 in every dimension. Decoding clips to the box
    instead of wrapping modulo Λₛ.
    """

    def decode(self, y: np.ndarray) -> np.ndarray:
        """Nearest box index per dimension."""
        lam = round_half_up(np.asarray(y, dtype=np.float64) + self.offset)
        return np.clip(lam, 0, self.h - 1).astype(np.int64)

    def nearest_in_coset(
        self, y: np.ndarray, coset: np.ndarray, p: int
    ) -> np.ndarray:
        """Nearest in-box point congruent to ĉ modulo 2^p."""
        step = 2**p
        lo = np.mod(coset, step)
        hi = lo + step * np.floor_divide(self.h - 1 - lo, step)
        z = step * round_half_up((y + self.offset - lo) / step) + lo
        return np.clip(z, lo, hi) - self.offset


def build_vc(
    shaping: Lattice | str,
    name: str | None = None,
    offset: np.ndarray | float | None = None,
) -> VoronoiConstellation:
    """Builds the VC Zⁿ/Λₛ.

    Args:
        shaping: Shaping lattice or its textual name (e.g. "8E8").
        name: Display name; defaults to "Zn/<shaping>".
        offset: Offset a; defaults to ½·1.

    Returns:
        The constellation.

    Raises:
        ConstellationError: If Λₛ is not inside Zⁿ or a diagonal entry of Gs
            is not a power of 2.
        ConfigError: If a textual lattice name is unknown.

    """
    lattice = lattice_from_name(shaping) if isinstance(shaping, str) else shaping
    if not lattice.is_integral:
        raise ConstellationError(f"Shaping lattice {lattice.name} is not inside Zⁿ")
    try:
        gs = triangularize(to_int(lattice.generator))
    except LatticeError as err:
        raise ConstellationError(f"Cannot triangularize {lattice.name}: {err}") from err
    for value in np.diag(gs):
        if int(value) & (int(value) - 1):
            raise ConstellationError(
                f"Diagonal entry {int(value)} of Gs for {lattice.name} "
                "is not a power of 2"
            )
    n = lattice.dimension
    if offset is None:
        a = np.full(n, 0.5)
    else:
        a = np.broadcast_to(np.asarray(offset, dtype=np.float64), (n,)).copy()
    return VoronoiConstellation(name or f"Z{n}/{lattice.name}", lattice, gs, a)


def with_offset(
    constellation: VoronoiConstellation, offset: np.ndarray
) -> VoronoiConstellation:
    """Returns a copy of the constellation using another offset."""
    return replace(constellation, offset=np.asarray(offset, dtype=np.float64))


def encode_g(constellation: VoronoiConstellation, u: np.ndarray) -> np.ndarray:
    """Maps integer indices to constellation points.

    Args:
        constellation: The constellation.
        u: Integer array (..., n) with 0 <= u <= h - 1.

    Returns:
        Points x = (u − a) − Q_Λₛ(u − a), shape (..., n).

    Raises:
        ConstellationError: If an index is out of range.

    """
    return constellation.encode(u)


def decode_w(constellation: VoronoiConstellation, y: np.ndarray) -> np.ndarray:
    """Maps received points to the index of the nearest coding-lattice point.

    For VCs, λ = ⌊y + a⌉ is reduced modulo Λₛ by back-substitution over Gs,
    so w(y + λₛ) = w(y) for every λₛ ∈ Λₛ. QAM products clip instead.

    Args:
        constellation: The constellation.
        y: Real array (..., n).

    Returns:
        Integer indices (..., n) inside the box U.

    """
    return constellation.decode(y)


def nearest_in_coset(
    constellation: VoronoiConstellation,
    y: np.ndarray,
    coset: np.ndarray,
    p: int,
) -> np.ndarray:
    """Final multistage decision x̂ on the coset 2^p·Zⁿ + ĉ.

    For VCs this is 2^p·⌊(y + a − ĉ)/2^p⌉ + ĉ − a; for QAM the result is
    clipped to the box so it stays a constellation point.
    """
    return constellation.nearest_in_coset(
        np.asarray(y, dtype=np.float64), np.asarray(coset), p
    )


def index_grid(h: np.ndarray) -> np.ndarray:
    """All indices of the box 0 <= u <= h - 1, shape (Π h, n)."""
    grids = np.meshgrid(*[np.arange(int(v)) for v in h], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1).astype(np.int64)


def enumerate_points(constellation: VoronoiConstellation) -> np.ndarray:
    """All constellation points, ordered like ``index_grid(h)``.

    Raises:
        UnsupportedError: If M exceeds 2²⁰.
    """
    if constellation.M > MAX_EXACT_POINTS:
        raise UnsupportedError(
            f"{constellation.name} has M={constellation.M} points; "
            f"enumeration is limited to {MAX_EXACT_POINTS}"
        )
    return constellation.encode(index_grid(constellation.h))


def random_indices(
    constellation: VoronoiConstellation, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Draws ``count`` uniform indices from U."""
    return rng.integers(0, constellation.h, size=(count, constellation.n))


def average_energy(
    constellation: VoronoiConstellation,
    mode: str = "auto",
    trials: int = DEFAULT_ENERGY_TRIALS,
    rng: np.random.Generator | None = None,
) -> EnergyEstimate:
    """Average symbol energy Es = (1/M) Σ ‖x‖².

    Args:
        constellation: The constellation.
        mode: "exact", "monte-carlo", or "auto" (exact when M <= 2²⁰).
        trials: Monte-Carlo sample count.
        rng: Random generator for Monte-Carlo mode (seed 0 when omitted).

    Returns:
        The estimate with its standard error.

    Raises:
        UnsupportedError: For exact mode on M > 2²⁰.
        ValueError: For an unknown mode.

    """
    if mode == "auto":
        mode = "exact" if constellation.M <= MAX_EXACT_POINTS else "monte-carlo"
    if mode == "exact":
        energies = np.sum(enumerate_points(constellation) ** 2, axis=-1)
        return EnergyEstimate(float(energies.mean()), 0.0, int(energies.size), "exact")
    if mode != "monte-carlo":
        raise ValueError(f"Unknown energy mode: {mode!r}")

    rng = rng if rng is not None else np.random.default_rng(0)
    x = constellation.encode(random_indices(constellation, trials, rng))
    energies = np.sum(x**2, axis=-1)
    stderr = float(energies.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return EnergyEstimate(float(energies.mean()), stderr, trials, "monte-carlo")


def _centroid(
    constellation: VoronoiConstellation, trials: int, rng: np.random.Generator
) -> tuple[np.ndarray, float]:
    if constellation.M <= MAX_EXACT_POINTS:
        x = enumerate_points(constellation)
    else:
        x = constellation.encode(random_indices(constellation, trials, rng))
    return x.mean(axis=0), float(np.mean(np.sum(x**2, axis=-1)))


def optimize_offset(
    constellation: VoronoiConstellation,
    tol: float = 1e-3,
    max_iter: int = 20,
    trials: int = DEFAULT_ENERGY_TRIALS,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Refines the offset a by centroid iteration.

    Starting from the constellation's offset, a ← a + centroid(Γ) until the
    centroid norm drops below tol·√Es. A step that raises the energy ends
    the iteration and the previous offset is kept.

    Returns:
        The refined offset vector.
    """
    logger = get_global_logger()
    rng = rng if rng is not None else np.random.default_rng(0)
    current = constellation
    centroid, energy = _centroid(current, trials, rng)
    for iteration in range(max_iter):
        norm = float(np.linalg.norm(centroid))
        if norm < tol * math.sqrt(energy):
            break
        candidate = with_offset(current, current.offset + centroid)
        new_centroid, new_energy = _centroid(candidate, trials, rng)
        logger.debug(
            "VC",
            f"offset iteration {iteration + 1}: "
            f"|centroid|={norm:.3e} Es={new_energy:.6f}",
        )
        if new_energy > energy:
            break
        current, centroid, energy = candidate, new_centroid, new_energy
    return current.offset.copy()


def cubic_reference_sizes(m: int, n: int) -> np.ndarray:
    """Per-dimension PAM sizes of the cubic constellation with 2^m points."""
    base, extra = divmod(m, n)
    widths = [base + 1 if i < extra else base for i in range(n)]
    return np.array([2**w for w in widths], dtype=np.int64)


def shaping_gain_db(
    constellation: VoronoiConstellation, es: float | None = None
) -> float:
    """Energy saving over the cubic constellation of the same rate, in dB."""
    sizes = cubic_reference_sizes(constellation.m, constellation.n)
    cubic_es = float(np.sum((sizes.astype(np.float64) ** 2 - 1) / 12))
    value = constellation.es if es is None else es
    return 10 * math.log10(cubic_es / value)
