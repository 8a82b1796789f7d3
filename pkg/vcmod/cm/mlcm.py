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

"""Multilevel coded modulation with multistage decoding.

A block carries N symbols. Coded level i (width k_i) is served by k_i
codewords of one component code of length N; codeword e supplies bit e of
the level block of every symbol. The m − n·p remaining label bits of each
symbol are sent uncoded.

The receiver decodes the levels in chain order. Level i LLRs are
conditioned on Σ_{t<i} ĉ_t, obtained by re-encoding the decoded
information of the earlier levels. After the last level the point is
decided on the coset 2^p·Zⁿ + ĉ and the uncoded bits are read from the
inverse mapping of its index.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from vcmod.cm.rates import mlcm_total_rate
from vcmod.exceptions import CodeError, ConfigError
from vcmod.fec import DEFAULT_MAX_ITER, ComponentCode, build_component
from vcmod.labeling import HybridLabeling, MultilevelLabeling, SetPartitionLabeling
from vcmod.llr import DEFAULT_R, mlcm_hybrid_llr, mlcm_sp_llr
from vcmod.logging import get_global_logger
from vcmod.results import MlcmReceiveResult
from vcmod.vc import VoronoiConstellation

_TRIVIAL = ("frozen", "uncoded", "0", "1")


@dataclass(frozen=True, eq=False)
class MlcmScheme:
    """An MLCM configuration.

    Attributes:
        constellation: The constellation.
        labeling: SP or hybrid labeling.
        codes: One component code per coded level, all of length N.
        radius2: Scaled-ball R² for hybrid level LLRs.
        default: Default distance r for empty hybrid ball subsets.
        max_iter: Decoder iteration limit.
    """

    constellation: VoronoiConstellation
    labeling: MultilevelLabeling
    codes: tuple[ComponentCode, ...]
    radius2: int = 1
    default: float = DEFAULT_R
    max_iter: int = DEFAULT_MAX_ITER

    @property
    def length(self) -> int:
        """Symbols per block N."""
        return self.codes[0].N

    @property
    def uncoded_width(self) -> int:
        """m − n·p uncoded bits per symbol."""
        return self.constellation.m - self.labeling.coded_bits

    @property
    def level_info_bits(self) -> tuple[int, ...]:
        """Information bits per block on each coded level, then uncoded."""
        coded = tuple(
            k * code.K
            for k, code in zip(self.labeling.level_widths, self.codes, strict=True)
        )
        return coded + (self.length * self.uncoded_width,)

    @property
    def info_bits(self) -> int:
        """Information bits per block."""
        return sum(self.level_info_bits)

    @property
    def rates(self) -> tuple[Fraction, ...]:
        """Component code rates."""
        return tuple(code.rate for code in self.codes)

    @property
    def total_rate(self) -> Fraction:
        """(Σ k_i·R_c^i + (m − n·p)) / (n/2)."""
        c = self.constellation
        return mlcm_total_rate(c.n, c.m, self.labeling.level_widths, self.rates)


def build_mlcm_scheme(
    constellation: VoronoiConstellation,
    labeling: MultilevelLabeling,
    level_codes: Sequence[str | ComponentCode],
    length: int = 4000,
    radius2: int = 1,
    default: float = DEFAULT_R,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MlcmScheme:
    """Builds an MLCM scheme.

    Args:
        constellation: The constellation.
        labeling: SP or hybrid labeling of the constellation.
        level_codes: One code per coded level: a component code or its
            configuration value ("frozen", "uncoded", "2/3", a code name).
        length: Block length N used when no LDPC code fixes it.
        radius2: Hybrid scaled-ball R².
        default: Default distance r for empty hybrid subsets.
        max_iter: Decoder iteration limit.

    Returns:
        The scheme.

    Raises:
        ConfigError: If the number of codes does not match the levels.
        CodeError: If the LDPC codes disagree on N.

    """
    widths = labeling.level_widths
    if len(level_codes) != len(widths):
        raise ConfigError(
            f"{len(level_codes)} level codes given for {len(widths)} coded levels"
        )
    built: list[ComponentCode | None] = [
        spec if not isinstance(spec, str) else None for spec in level_codes
    ]
    for i, spec in enumerate(level_codes):
        if isinstance(spec, str) and spec.strip() not in _TRIVIAL:
            built[i] = build_component(spec, length)
    lengths = {code.N for code in built if code is not None}
    if len(lengths) > 1:
        raise CodeError(f"Level codes disagree on the block length: {sorted(lengths)}")
    block = lengths.pop() if lengths else length
    codes = tuple(
        code if code is not None else build_component(str(level_codes[i]), block)
        for i, code in enumerate(built)
    )
    scheme = MlcmScheme(constellation, labeling, codes, radius2, default, max_iter)
    get_global_logger().verbose(
        "MLCM",
        f"{constellation.name} {labeling.kind} on {labeling.chain.name}: "
        f"k={widths} rates={tuple(str(r) for r in scheme.rates)} N={block} "
        f"R_tot={float(scheme.total_rate):.4g}",
    )
    return scheme


def _split(scheme: MlcmScheme, info: np.ndarray) -> list[np.ndarray]:
    info = np.asarray(info, dtype=np.uint8).ravel()
    if info.size != scheme.info_bits:
        raise CodeError(
            f"MLCM block takes {scheme.info_bits} info bits, got {info.size}"
        )
    bounds = np.cumsum(scheme.level_info_bits)[:-1]
    return np.split(info, bounds)


def level_block(code: ComponentCode, width: int, info: np.ndarray) -> np.ndarray:
    """Encodes k_i codewords into the (N, k_i) level block."""
    words = np.asarray(info, dtype=np.uint8).reshape(width, code.K)
    return np.stack([code.encode(w) for w in words], axis=-1).astype(np.uint8)


def mlcm_labels(scheme: MlcmScheme, info: np.ndarray) -> np.ndarray:
    """Labels (N, m) of one block: coded level blocks, then uncoded bits."""
    parts = _split(scheme, info)
    widths = scheme.labeling.level_widths
    blocks = [
        level_block(code, k, part)
        for code, k, part in zip(scheme.codes, widths, parts[:-1], strict=True)
    ]
    blocks.append(parts[-1].reshape(scheme.length, scheme.uncoded_width))
    return np.concatenate(blocks, axis=-1)


def mlcm_transmit(scheme: MlcmScheme, info: np.ndarray) -> np.ndarray:
    """Maps one block of information bits to N channel symbols.

    Raises:
        CodeError: If the information length is wrong.
    """
    labels = mlcm_labels(scheme, info)
    return scheme.constellation.encode(scheme.labeling.map(labels))


def level_llr(
    scheme: MlcmScheme,
    level: int,
    y: np.ndarray,
    sigma2: float,
    coset: np.ndarray,
) -> np.ndarray:
    """Conditional LLRs (N, k_i) of coded level ``level`` (0-based)."""
    labeling = scheme.labeling
    if isinstance(labeling, SetPartitionLabeling):
        frame = mlcm_sp_llr(scheme.constellation, labeling, level, y, sigma2, coset)
    elif isinstance(labeling, HybridLabeling):
        frame = mlcm_hybrid_llr(
            scheme.constellation,
            labeling,
            level,
            y,
            sigma2,
            coset,
            scheme.radius2,
            scheme.default,
        )
    else:
        raise ConfigError(f"MLCM needs an SP or hybrid labeling, got {labeling.kind}")
    return frame.values


def mlcm_receive(
    scheme: MlcmScheme,
    y: np.ndarray,
    sigma2: float,
    info: np.ndarray | None = None,
    genie: bool = False,
) -> MlcmReceiveResult:
    """Multistage decoding of one block.

    Args:
        scheme: The MLCM scheme.
        y: Received points (N, n).
        sigma2: Noise variance per two dimensions.
        info: Transmitted information bits, for error counting.
        genie: Condition every stage on the transmitted coded levels instead
            of the decoded ones (requires ``info``).

    Returns:
        Decoded bits, per-level errors and the total BER.

    Raises:
        ConfigError: If ``genie`` is set without ``info``.

    """
    if genie and info is None:
        raise ConfigError("Genie-aided decoding needs the transmitted bits")
    labeling = scheme.labeling
    widths = labeling.level_widths
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    sent_parts = _split(scheme, info) if info is not None else None
    sent_labels = mlcm_labels(scheme, info) if info is not None else None

    coset = np.zeros(y.shape, dtype=np.int64)
    decoded: list[np.ndarray] = []
    prefec: list[int] = []
    offsets = labeling.level_offsets
    for level, (code, k) in enumerate(zip(scheme.codes, widths, strict=True)):
        llr = level_llr(scheme, level, y, sigma2, coset)
        results = [code.decode(llr[:, e], max_iter=scheme.max_iter) for e in range(k)]
        level_info = np.concatenate([r.info for r in results])
        decoded.append(level_info)
        if sent_labels is not None:
            sent_block = sent_labels[:, offsets[level] : offsets[level] + k]
            prefec.append(int(np.sum((llr < 0).astype(np.uint8) != sent_block)))
            if genie:
                block = sent_block
            else:
                block = level_block(code, k, level_info)
        else:
            block = level_block(code, k, level_info)
        coset = coset + labeling.level_coset(level, block)

    x_hat = scheme.constellation.nearest_in_coset(y, coset, labeling.p)
    labels = labeling.demap(scheme.constellation.decode(x_hat))
    decoded.append(labels[:, labeling.coded_bits :].ravel())
    bits = np.concatenate(decoded).astype(np.uint8)

    level_bits = scheme.level_info_bits
    errors: tuple[int, ...] = ()
    total = None
    if sent_parts is not None:
        errors = tuple(
            int(np.sum(d != s)) for d, s in zip(decoded, sent_parts, strict=True)
        )
        total = sum(errors) / max(scheme.info_bits, 1)
    return MlcmReceiveResult(bits, errors, level_bits, tuple(prefec), total)
