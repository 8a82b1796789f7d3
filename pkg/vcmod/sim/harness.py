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

"""Monte-Carlo BER sweeps for uncoded and coded transmission.

Each SNR point runs until a stop rule fires (200 bit errors or 10⁷ bits by
default) and yields one ``BerRecord``. Points use independent Philox streams
spawned from the master seed, so a sweep gives identical records whatever
the thread count.

Example:
    ```python
    from vcmod.labeling import GrayLabeling
    from vcmod.sim import StopRule, uncoded_ber
    from vcmod.vc import build_qam

    qam = build_qam(6)
    records = uncoded_ber(qam, GrayLabeling(qam.h), [16.0, 18.0], seed=1)
    [round(r.ber, 4) for r in records]
    ```
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import time

import numpy as np

from vcmod.cm import (
    BicmScheme,
    MlcmScheme,
    bicm_receive,
    bicm_transmit,
    mlcm_receive,
    mlcm_transmit,
)
from vcmod.exceptions import ConfigError
from vcmod.labeling import Labeling
from vcmod.logging import get_global_logger
from vcmod.results import BerRecord
from vcmod.sim.channel import awgn, sigma2_per_2d, sigma2_total, snr_streams
from vcmod.vc import VoronoiConstellation, average_energy

DEFAULT_BATCH = 10_000

PointRunner = Callable[[float, np.random.Generator], BerRecord]


@dataclass(frozen=True)
class StopRule:
    """When to stop simulating one SNR point.

    A point stops once it has at least ``min_blocks`` blocks and either
    ``max_errors`` bit errors or ``max_bits`` simulated bits.

    Attributes:
        max_errors: Target number of bit errors.
        max_bits: Cap on simulated information bits.
        min_blocks: Minimum number of blocks (batches when uncoded).
    """

    max_errors: int = 200
    max_bits: int = 10_000_000
    min_blocks: int = 1

    def __post_init__(self) -> None:
        if self.max_errors < 1 or self.max_bits < 1 or self.min_blocks < 0:
            raise ConfigError(
                "Stop rule needs max_errors >= 1, max_bits >= 1, min_blocks >= 0"
            )

    def done(self, errors: int, bits: int, blocks: int) -> bool:
        """True when the point has enough statistics."""
        if blocks < self.min_blocks:
            return False
        return errors >= self.max_errors or bits >= self.max_bits


def measured_energy(constellation: VoronoiConstellation, seed: int = 0) -> float:
    """Es of the constellation instance (exact up to 2²⁰ points)."""
    return average_energy(constellation, rng=np.random.default_rng(seed)).value


def _level_groups(labeling: Labeling, m: int) -> list[slice]:
    offsets = getattr(labeling, "level_offsets", None)
    if offsets is None:
        return []
    widths = labeling.level_widths
    groups = [slice(o, o + k) for o, k in zip(offsets, widths, strict=True)]
    coded = sum(widths)
    if coded < m:
        groups.append(slice(coded, m))
    return groups


def run_points(
    snr_db: Sequence[float],
    runner: PointRunner,
    seed: int = 0,
    threads: int = 1,
) -> list[BerRecord]:
    """Runs ``runner`` on every SNR point with its own random stream.

    Args:
        snr_db: SNR grid in dB.
        runner: Simulates one point given its SNR and generator.
        seed: Master seed.
        threads: Worker threads; points are independent.

    Returns:
        Records in grid order.

    Raises:
        ConfigError: If threads is below 1.

    """
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    grid = [float(s) for s in snr_db]
    streams = snr_streams(seed, len(grid))
    if threads == 1 or len(grid) == 1:
        return [runner(s, rng) for s, rng in zip(grid, streams, strict=True)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(runner, grid, streams))


def _finish(
    name: str,
    snr: float,
    counts: tuple[int, int, int, int],
    level_bers: tuple[float, ...],
    seed: int,
    started: float,
) -> BerRecord:
    bits, errors, pre_bits, pre_errors = counts
    record = BerRecord(
        scheme=name,
        snr_db=snr,
        bits=bits,
        errors=errors,
        prefec_ber=pre_errors / pre_bits if pre_bits else 0.0,
        postfec_ber=errors / bits if bits else 0.0,
        level_bers=level_bers,
        seed=seed,
        seconds=time.perf_counter() - started,
    )
    get_global_logger().info(
        "SWEEP",
        f"{name} @ {snr:.2f} dB: BER={record.ber:.3e} "
        f"({errors}/{bits}) pre-FEC={record.prefec_ber:.3e} "
        f"[{record.seconds:.1f}s]",
    )
    return record


def uncoded_ber(
    constellation: VoronoiConstellation,
    labeling: Labeling,
    snr_db: Sequence[float],
    stop: StopRule | None = None,
    seed: int = 0,
    threads: int = 1,
    batch: int = DEFAULT_BATCH,
    es: float | None = None,
    name: str | None = None,
) -> list[BerRecord]:
    """Uncoded BER of a labelled constellation over an SNR grid.

    Per batch: uniform labels, map, encode, AWGN, modulo (or clipping)
    decode, demap, count bit errors.

    Args:
        constellation: VC or QAM/TDHQ constellation.
        labeling: Gray, SP or hybrid labeling of it.
        snr_db: SNR grid in dB (Es/σ²_tot).
        stop: Stop rule (200 errors or 10⁷ bits when omitted).
        seed: Master seed.
        threads: Worker threads over SNR points.
        batch: Symbols per batch.
        es: Symbol energy; measured on the constellation when omitted.
        name: Scheme identifier for the records.

    Returns:
        One record per SNR point. Multilevel labelings also report the BER
        of each coded level and of the uncoded bits.

    """
    stop = stop or StopRule()
    m = constellation.m
    es = measured_energy(constellation, seed) if es is None else es
    name = name or f"{constellation.name}/{labeling.kind}/uncoded"
    groups = _level_groups(labeling, m)
    logger = get_global_logger()

    def run(snr: float, rng: np.random.Generator) -> BerRecord:
        started = time.perf_counter()
        s_tot = sigma2_total(es, snr)
        per_bit = np.zeros(m, dtype=np.int64)
        bits = errors = blocks = 0
        while not stop.done(errors, bits, blocks):
            labels = rng.integers(0, 2, size=(batch, m), dtype=np.uint8)
            x = constellation.encode(labeling.map(labels))
            y = awgn(x, s_tot, rng)
            wrong = labeling.demap(constellation.decode(y)) != labels
            per_bit += np.count_nonzero(wrong, axis=0)
            errors = int(per_bit.sum())
            bits += labels.size
            blocks += 1
            if threads == 1:
                logger.progress("SWEEP", f"{name} @ {snr:.2f} dB: {errors}/{bits}")
        symbols = bits // m if m else 0
        level_bers = tuple(
            float(per_bit[g].sum() / (symbols * (g.stop - g.start))) for g in groups
        )
        counts = (bits, errors, bits, errors)
        return _finish(name, snr, counts, level_bers, seed, started)

    return run_points(snr_db, run, seed, threads)


def coded_ber(
    scheme: BicmScheme | MlcmScheme,
    snr_db: Sequence[float],
    stop: StopRule | None = None,
    seed: int = 0,
    threads: int = 1,
    es: float | None = None,
    genie: bool = False,
    name: str | None = None,
) -> list[BerRecord]:
    """Coded BER of a BICM or MLCM scheme over an SNR grid.

    Per block: random information bits, encode, map, AWGN, demodulate and
    decode. The pre-FEC BER counts hard decisions of the channel LLRs
    (BICM) or of all label bits before decoding (MLCM).

    Args:
        scheme: BICM or MLCM scheme.
        snr_db: SNR grid in dB (Es/σ²_tot).
        stop: Stop rule (200 errors or 10⁷ bits when omitted).
        seed: Master seed.
        threads: Worker threads over SNR points.
        es: Symbol energy; measured on the constellation when omitted.
        genie: MLCM only: condition each stage on the transmitted levels.
        name: Scheme identifier for the records.

    Returns:
        One record per SNR point; MLCM records carry per-level BERs.

    Raises:
        ConfigError: If ``genie`` is requested for BICM.

    """
    stop = stop or StopRule()
    c = scheme.constellation
    es = measured_energy(c, seed) if es is None else es
    logger = get_global_logger()

    if isinstance(scheme, BicmScheme):
        if genie:
            raise ConfigError("Genie-aided decoding applies to MLCM only")
        name = name or f"{c.name}/bicm/{scheme.code.name}"
        coded_length = scheme.codewords * scheme.code.N

        def run(snr: float, rng: np.random.Generator) -> BerRecord:
            started = time.perf_counter()
            s_tot = sigma2_total(es, snr)
            sigma2 = sigma2_per_2d(s_tot, c.n)
            bits = errors = pre_bits = pre_errors = blocks = 0
            while not stop.done(errors, bits, blocks):
                info = rng.integers(0, 2, size=scheme.info_bits, dtype=np.uint8)
                y = awgn(bicm_transmit(scheme, info), s_tot, rng)
                result = bicm_receive(scheme, y, sigma2, info)
                errors += int(np.count_nonzero(result.info != info))
                bits += info.size
                pre_errors += round((result.prefec_ber or 0.0) * coded_length)
                pre_bits += coded_length
                blocks += 1
                if threads == 1:
                    logger.progress(
                        "SWEEP", f"{name} @ {snr:.2f} dB: {errors}/{bits}"
                    )
            counts = (bits, errors, pre_bits, pre_errors)
            return _finish(name, snr, counts, (), seed, started)

        return run_points(snr_db, run, seed, threads)

    rates = "-".join(str(r) for r in scheme.rates)
    name = name or f"{c.name}/{scheme.labeling.kind}-mlcm/{rates}"
    if genie:
        name += "/genie"
    per_block = scheme.length * c.m
    level_sizes = np.array(scheme.level_info_bits, dtype=np.int64)

    def run(snr: float, rng: np.random.Generator) -> BerRecord:
        started = time.perf_counter()
        s_tot = sigma2_total(es, snr)
        sigma2 = sigma2_per_2d(s_tot, c.n)
        level_errors = np.zeros(level_sizes.size, dtype=np.int64)
        bits = errors = pre_bits = pre_errors = blocks = 0
        while not stop.done(errors, bits, blocks):
            info = rng.integers(0, 2, size=scheme.info_bits, dtype=np.uint8)
            y = awgn(mlcm_transmit(scheme, info), s_tot, rng)
            result = mlcm_receive(scheme, y, sigma2, info, genie=genie)
            level_errors += np.array(result.level_errors, dtype=np.int64)
            errors = int(level_errors.sum())
            bits += info.size
            pre_errors += sum(result.prefec_errors) + result.level_errors[-1]
            pre_bits += per_block
            blocks += 1
            if threads == 1:
                logger.progress("SWEEP", f"{name} @ {snr:.2f} dB: {errors}/{bits}")
        totals = level_sizes * max(blocks, 1)
        level_bers = tuple(
            float(e / t) if t else 0.0
            for e, t in zip(level_errors, totals, strict=True)
        )
        counts = (bits, errors, pre_bits, pre_errors)
        return _finish(name, snr, counts, level_bers, seed, started)

    return run_points(snr_db, run, seed, threads)
