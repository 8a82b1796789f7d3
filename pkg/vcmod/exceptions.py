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

"""Exception hierarchy for vcmod.

All exceptions inherit from VCError so callers can catch every library
failure with one except clause, or pick the specific subclass they care
about.

Example:
    Catching specific error types:
        ```python
        from vcmod.exceptions import ConfigError, LatticeError
        from vcmod.vc import catalog_build

        try:
            vc = catalog_build("E8-24")
        except ConfigError as e:
            print(f"Unknown constellation: {e}")
        except LatticeError as e:
            print(f"Lattice problem: {e}")
        ```

    Catching all vcmod errors:
        ```python
        from vcmod.exceptions import VCError

        try:
            records = run_sweep(config)
        except VCError as e:
            print(f"vcmod error: {e}")
        ```
"""

from __future__ import annotations

__all__ = [
    "VCError",
    "ConfigError",
    "LatticeError",
    "ConstellationError",
    "LabelingError",
    "CodeError",
    "UnsupportedError",
    "InternalConsistencyError",
]


class VCError(Exception):
    """Base exception for all vcmod errors."""

    pass


class ConfigError(VCError):
    """Raised for configuration-related errors.

    This exception is raised when there are problems with:

    - YAML parse errors (the message carries the line and column)
    - Missing experiment or defaults files
    - Schema violations (wrong types, values outside the allowed set)
    - Unknown catalog names (constellations, chains, codes, lattices)
    - Invalid numeric knobs (e.g. an LLR default value r not above R²)

    Example:
        Catching configuration errors:
            ```python
            from vcmod.config import load_experiment_config
            from vcmod.exceptions import ConfigError

            try:
                config = load_experiment_config(Path("broken.yaml"))
            except ConfigError as e:
                print(f"Config error: {e}")
            ```
    """

    pass


class LatticeError(VCError):
    """Raised for invalid lattice constructions and partitions.

    This exception is raised when there are problems with:

    - Singular or non-square generator matrices
    - Odd dimensions passed to the rotation builder
    - Partitions whose child is not a sublattice of the parent
    - Coset tables whose order is not a power of 2 or too large to enumerate
    - Partition chains with broken containment or a non-cubic terminal
    - Non-finite coordinates handed to a quantizer
    """

    pass


class ConstellationError(VCError):
    """Raised for invalid Voronoi constellations or indices.

    This exception is raised when there are problems with:

    - Shaping lattices that are not integer sublattices of Zⁿ
    - Diagonal entries of the triangular shaping generator that are not
        powers of 2
    - Integer indices outside the box 0 <= u <= h - 1
    """

    pass


class LabelingError(VCError):
    """Raised for bit-labeling mismatches.

    This exception is raised when there are problems with:

    - Label widths that do not match the constellation
    - Partition chains that are incompatible with the shaping lattice
    - Integers outside the range covered by a Gray block
    - Multilevel queries for a level the labeling does not have
    """

    pass


class CodeError(VCError):
    """Raised for channel-code loading and length errors.

    This exception is raised when there are problems with:

    - Malformed alist parity files (bad header, out-of-range indices)
    - Column and row sections of a parity file that disagree
    - Information or LLR vectors whose length does not match the code
    - Parity matrices too large for dense generator construction
    """

    pass


class UnsupportedError(VCError):
    """Raised when a request exceeds what can be enumerated.

    Exhaustive energy sums, exhaustive LLRs and mutual-information estimates
    all enumerate the constellation; requests on constellations above their
    size limits raise this error instead of running forever.
    """

    pass


class InternalConsistencyError(VCError):
    """Raised when an internal table or bijection check fails.

    Seen when a coset table matches zero or several representatives for an
    integer point, or when a round-trip check finds a mismatch.
    """

    pass
