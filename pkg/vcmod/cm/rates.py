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

"""Rate bookkeeping and capacity-rule rate selection.

Total rates are counted in information bits per two-dimensional symbol:

- BICM: β·R_c
- MLCM: (Σ k_i·R_c^i + (m − n·p)) / (n/2)

``RATE_PLANS`` lists the simulated scheme configurations with their
published total rates, and ``capacity_rule_rates`` picks per-level code
rates from estimated conditional mutual information.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from vcmod.exceptions import ConfigError
from vcmod.fec import DVB_S2_RATES
from vcmod.labeling import build_labeling
from vcmod.vc import build_constellation

CAPACITY_CUTOFF = 0.2

# DVB-S2 rates of the form 1/q or q/(q+1).
CAPACITY_RULE_RATES: tuple[Fraction, ...] = tuple(
    r for r in DVB_S2_RATES if r.numerator == 1 or r.denominator == r.numerator + 1
)


def bicm_total_rate(n: int, m: int, rate: Fraction) -> Fraction:
    """β·R_c with β = 2m/n."""
    return Fraction(2 * m, n) * Fraction(rate)


def mlcm_total_rate(
    n: int, m: int, widths: Sequence[int], rates: Sequence[Fraction]
) -> Fraction:
    """(Σ k_i·R_c^i + (m − Σ k_i)) / (n/2).

    Raises:
        ConfigError: If the number of rates differs from the number of
            coded levels.
    """
    if len(widths) != len(rates):
        raise ConfigError(
            f"{len(rates)} code rates given for {len(widths)} coded levels"
        )
    pairs = zip(widths, rates, strict=True)
    coded = sum((k * Fraction(r) for k, r in pairs), Fraction(0))
    return (coded + (m - sum(widths))) / Fraction(n, 2)


@dataclass(frozen=True)
class RatePlan:
    """One simulated coded modulation configuration.

    Attributes:
        constellation: Constellation name.
        mapping: "gray", "sp" or "hybrid".
        scheme: "bicm" or "mlcm".
        chain: Partition or hybrid chain name (MLCM only).
        rates: Code rate(s); one for BICM, one per coded level for MLCM.
        total: Published total rate, rounded as published.
    """

    constellation: str
    mapping: str
    scheme: str
    chain: str | None
    rates: tuple[Fraction, ...]
    total: float

    @property
    def name(self) -> str:
        """Identifier such as ``E8-24/hybrid/mlcm``."""
        return f"{self.constellation}/{self.mapping}/{self.scheme}"


def _plan(
    constellation: str,
    mapping: str,
    rates: str,
    total: float,
    chain: str | None = None,
) -> RatePlan:
    scheme = "bicm" if mapping == "gray" else "mlcm"
    parsed = tuple(Fraction(r) for r in rates.split(","))
    if scheme == "mlcm" and chain is None:
        chain = "hybrid-p1"
    return RatePlan(constellation, mapping, scheme, chain, parsed, total)


RATE_PLANS: tuple[RatePlan, ...] = (
    _plan("E8-24", "gray", "8/9", 5.33),
    _plan("64-QAM", "gray", "8/9", 5.33),
    _plan("E8-24", "hybrid", "2/3", 5.33),
    _plan("L24-72", "hybrid", "2/3", 5.33),
    _plan("64-QAM", "hybrid", "2/3", 5.33),
    _plan("E8-32", "gray", "9/10", 7.2),
    _plan("256-QAM", "gray", "9/10", 7.2),
    _plan("E8-32", "hybrid", "3/5", 7.2),
    _plan("L24-96", "hybrid", "3/5", 7.2),
    _plan("256-QAM", "hybrid", "3/5", 7.2),
    _plan("256-QAM", "sp", "1/3,8/9", 7.22, "checkerboard-n2"),
    _plan("E8-40", "gray", "9/10", 9.0),
    _plan("1024-QAM", "gray", "9/10", 9.0),
    _plan("E8-40", "hybrid", "1/2", 9.0),
    _plan("L24-120", "hybrid", "1/2", 9.0),
    _plan("1024-QAM", "hybrid", "1/2", 9.0),
    _plan("E8-48", "gray", "9/10", 10.8),
    _plan("4096-QAM", "gray", "9/10", 10.8),
    _plan("E8-48", "hybrid", "2/5", 10.8),
    _plan("L24-144", "hybrid", "2/5", 10.8),
    _plan("4096-QAM", "hybrid", "2/5", 10.8),
    _plan("E8-48", "sp", "0,0,4/5", 10.8, "table-IV-n8"),
    _plan("L16-92", "gray", "9/10", 10.35),
    _plan("TDHQ2", "gray", "9/10", 10.35),
    _plan("L16-92", "hybrid", "2/5", 10.3),
    _plan("TDHQ2", "hybrid", "2/5", 10.3),
)


def plan_total_rate(plan: RatePlan) -> Fraction:
    """Closed-form total rate of a plan, from its constellation and chain."""
    c = build_constellation(plan.constellation)
    if plan.scheme == "bicm":
        return bicm_total_rate(c.n, c.m, plan.rates[0])
    labeling = build_labeling(c, plan.mapping, plan.chain)
    return mlcm_total_rate(c.n, c.m, labeling.level_widths, plan.rates)


def capacity_rule_rates(
    level_mi: Sequence[float],
    widths: Sequence[int],
    available: Sequence[Fraction] = CAPACITY_RULE_RATES,
    cutoff: float = CAPACITY_CUTOFF,
) -> tuple[Fraction, ...]:
    """Assigns each level the largest available rate not above MI/k.

    Args:
        level_mi: Estimated conditional MI per level, in bits.
        widths: Level widths k_i.
        available: Candidate code rates. The default ladder leaves out 2/5
            and 3/5, so 256-QAM SP at 23.9 dB gets 1/3 and 8/9.
        cutoff: Levels with MI/k below this carry no data (rate 0).

    Returns:
        One rate per level; 0 for unused levels.

    Raises:
        ConfigError: If the two sequences differ in length.

    """
    if len(level_mi) != len(widths):
        raise ConfigError(f"{len(level_mi)} MI values for {len(widths)} levels")
    ordered = sorted(Fraction(r) for r in available)
    plan = []
    for mi, k in zip(level_mi, widths, strict=True):
        per_bit = mi / k
        fitting = [r for r in ordered if r <= per_bit]
        if per_bit < cutoff or not fitting:
            plan.append(Fraction(0))
        else:
            plan.append(fitting[-1])
    return tuple(plan)
