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

"""Command-line interface for vcmod.

Commands:

    lattice-quantize: Nearest lattice point and squared distance
    vc-info: Size, spectral efficiency and energy of a constellation
    map-roundtrip: Bijection check of a labeling (exit 1 on any failure)
    llr-eval: Max-log LLRs of received symbols read from a file
    ber-sweep: Monte-Carlo BER sweep driven by an experiment file
    mi-levels: Per-level conditional mutual information curves
    rate-plan: Simulated rate plans, or capacity-rule rates from MI
    validate: Check an experiment file without running it

Example:
    ```bash
    $ vcmod vc-info E8-24
    M=16777216 m=24 beta=6.000
    $ vcmod map-roundtrip --vc L24-144 --mapping hybrid --samples 100000
    $ vcmod ber-sweep --config experiments/e8-24-hybrid.yaml --threads 4
    ```

Exit Codes:

- 0: Success
- 1: Error (configuration, unsupported request or failed check)

Note:
    Every command accepts the shared flags --config, --seed, --out,
    --threads, --verbose and --debug. Each command has its own handler
    (``cmd_<command>``). Verbose mode prints full tracebacks on errors;
    debug mode also dumps the merged configuration.
"""

from __future__ import annotations

import argparse
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
import sys
from typing import Any

import numpy as np

from vcmod.cm import (
    RATE_PLANS,
    capacity_rule_rates,
    mi_bit_levels,
    mlcm_total_rate,
    plan_total_rate,
)
from vcmod.config import config_echo, load_experiment
from vcmod.exceptions import (
    ConfigError,
    InternalConsistencyError,
    VCError,
)
from vcmod.labeling import build_labeling, check_roundtrip
from vcmod.lattices import lattice_from_name
from vcmod.llr import (
    DEFAULT_R,
    bicm_ball_llr,
    exact_maxlog_llr,
    mlcm_hybrid_llr,
    mlcm_sp_llr,
    qam_exact_llr,
    read_table,
    write_llr_frames,
)
from vcmod.logging import get_logger, set_global_logger
from vcmod.sim import (
    build_experiment,
    run_experiment,
    sigma2_per_2d,
    sigma2_total,
    snr_grid,
    snr_streams,
    thresholds,
    write_mi,
    write_records,
    write_summary,
)
from vcmod.validation import validate_experiment
from vcmod.vc import (
    QamConstellation,
    average_energy,
    build_constellation,
    shaping_gain_db,
)

LLR_METHODS = ("auto", "exact", "ball")


def _setup(args: argparse.Namespace) -> None:
    verbose = getattr(args, "verbose", False)
    debug = getattr(args, "debug", False)
    set_global_logger(get_logger(verbose=verbose, debug=debug))


def _fail(args: argparse.Namespace, err: BaseException) -> int:
    """Prints an error (with traceback when verbose) and returns exit code 1."""
    print(f"Error: {err}")
    if getattr(args, "verbose", False) or getattr(args, "debug", False):
        import traceback

        traceback.print_exception(err)
    return 1


def _seed(args: argparse.Namespace) -> int:
    seed = getattr(args, "seed", None)
    return 0 if seed is None else int(seed)


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Shared flags that override the experiment file."""
    overrides: dict[str, Any] = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = int(args.seed)
    if getattr(args, "threads", None) is not None:
        overrides["threads"] = int(args.threads)
    if getattr(args, "out", None):
        overrides["output"] = {"dir": str(Path(args.out).resolve())}
    return overrides


def _load(args: argparse.Namespace) -> dict[str, Any]:
    config = getattr(args, "config", None)
    if not config:
        raise ConfigError("--config is required for this command")
    return load_experiment(Path(config), overrides=_overrides(args))


def _print_provenance(
    config: dict[str, Any], provenance: dict[str, Any], prefix: str = ""
) -> None:
    """Prints which layer set each configuration value."""
    for key in sorted(provenance):
        full_key = f"{prefix}.{key}" if prefix else key
        prov_value = provenance[key]
        if isinstance(prov_value, dict):
            cfg_value = config.get(key, {})
            if isinstance(cfg_value, dict):
                _print_provenance(cfg_value, prov_value, full_key)
        else:
            value_repr = repr(config.get(key))
            if len(value_repr) > 60:
                value_repr = value_repr[:57] + "..."
            print(f"  {full_key}: {value_repr} ({prov_value})")


def _format_vector(values: np.ndarray) -> str:
    return "(" + ", ".join(f"{float(v):g}" for v in values) + ")"


def cmd_lattice_quantize(args: argparse.Namespace) -> int:
    """Handler for 'vcmod lattice-quantize'.

    Quantizes the point given on the command line, or every row of
    ``--input``, to the named lattice and prints the nearest point and its
    squared distance (6 decimals).

    Returns:
        Exit code (0 for success, 1 for failure).
    """
    _setup(args)
    try:
        lattice = lattice_from_name(args.lattice)
        if getattr(args, "input", None):
            y = read_table(Path(args.input), "points")
        elif args.point:
            y = np.atleast_2d(np.asarray(args.point, dtype=np.float64))
        else:
            raise ConfigError("Give a point on the command line or --input")
        if y.shape[-1] != lattice.dimension:
            raise ConfigError(
                f"{lattice.name} has dimension {lattice.dimension}, "
                f"points have {y.shape[-1]} coordinates"
            )
        x = lattice.quantize(y)
    except VCError as err:
        return _fail(args, err)

    distance2 = np.sum((y - x) ** 2, axis=-1)
    for point, d2 in zip(x, distance2, strict=True):
        print(f"x={_format_vector(point)} d2={d2:.6f}")
    return 0


def cmd_vc_info(args: argparse.Namespace) -> int:
    """Handler for 'vcmod vc-info'.

    Prints M, m and β on the first line (``M=16777216 m=24 beta=6.000``),
    then the dimension, shaping lattice, h, the average energy and the
    shaping gain over the equal-rate cubic constellation.

    Returns:
        Exit code (0 for success, 1 for failure).
    """
    _setup(args)
    try:
        c = build_constellation(args.name)
        energy = average_energy(
            c,
            mode=args.energy,
            trials=args.samples,
            rng=np.random.default_rng(_seed(args)),
        )
    except (VCError, ValueError) as err:
        return _fail(args, err)

    print(f"M={c.M} m={c.m} beta={c.beta:.3f}")
    print(f"n={c.n} shaping={c.shaping.name} h={c.h.tolist()}")
    if energy.mode == "exact":
        print(f"Es={energy.value:.6f} (exact)")
    else:
        print(
            f"Es={energy.value:.6f} +/- {energy.stderr:.6f} "
            f"(monte-carlo, {energy.trials} trials)"
        )
    print(f"shaping_gain_db={shaping_gain_db(c, energy.value):.3f}")
    return 0


def cmd_map_roundtrip(args: argparse.Namespace) -> int:
    """Handler for 'vcmod map-roundtrip'.

    Checks demap(decode(encode(map(b)))) = b, exhaustively for small
    constellations or over ``--samples`` random labels.

    Returns:
        Exit code (0 when every label round-trips, 1 otherwise).
    """
    _setup(args)
    try:
        c = build_constellation(args.vc)
        labeling = build_labeling(c, args.mapping, getattr(args, "chain", None))
        result = check_roundtrip(
            c, labeling, args.samples, np.random.default_rng(_seed(args))
        )
    except VCError as err:
        return _fail(args, err)

    kind = "exhaustive" if result.exhaustive else "sampled"
    print(
        f"{result.constellation} {result.mapping}: {result.samples} labels "
        f"({kind}), {result.failures} failure(s)"
    )
    if result.failures:
        return _fail(
            args,
            InternalConsistencyError(
                f"{result.failures} label(s) did not round-trip"
            ),
        )
    return 0


def _llr_values(args: argparse.Namespace, y: np.ndarray) -> np.ndarray:
    c = build_constellation(args.vc)
    labeling = build_labeling(c, args.mapping, getattr(args, "chain", None))
    if args.sigma2 is not None:
        sigma2 = float(args.sigma2)
    elif args.snr_db is not None:
        sigma2 = sigma2_per_2d(sigma2_total(c.es, float(args.snr_db)), c.n)
    else:
        raise ConfigError("Give --snr-db or --sigma2")
    if y.shape[-1] != c.n:
        raise ConfigError(f"{c.name} is {c.n}-dimensional, got {y.shape[-1]} columns")

    method = args.method
    default = DEFAULT_R if args.default is None else float(args.default)
    if method == "exact":
        return exact_maxlog_llr(c, labeling, y, sigma2).values
    if args.mapping == "gray":
        if isinstance(c, QamConstellation) and method != "ball":
            return qam_exact_llr(c.h, y, sigma2, c.offset).values
        return bicm_ball_llr(c, y, sigma2, args.radius2, default, labeling).values
    level = int(args.level) - 1
    if args.mapping == "sp":
        sp = mlcm_sp_llr(c, labeling, level, y, sigma2)  # type: ignore[arg-type]
        return sp.values
    radius2 = 1 if args.radius2 is None else int(args.radius2)
    return mlcm_hybrid_llr(
        c, labeling, level, y, sigma2, None, radius2, default  # type: ignore[arg-type]
    ).values


def cmd_llr_eval(args: argparse.Namespace) -> int:
    """Handler for 'vcmod llr-eval'.

    Reads received symbols (one per line) from ``--input`` and writes one
    LLR frame per symbol to ``--out`` (default: the input with suffix
    ``.llr``). Gray labelings get BICM LLRs over all bits; SP and hybrid
    labelings get the LLRs of ``--level`` given a zero coset. ``--method
    exact`` forces exhaustive max-log over the whole constellation.

    Returns:
        Exit code (0 for success, 1 for failure).
    """
    _setup(args)
    try:
        input_path = Path(args.input)
        y = read_table(input_path, "received symbols")
        values = _llr_values(args, y)
        out = Path(args.out) if args.out else input_path.with_suffix(".llr")
        write_llr_frames(out, values)
    except VCError as err:
        return _fail(args, err)

    print(f"Wrote {values.shape[0]} LLR frame(s) of width {values.shape[1]} to {out}")
    return 0


def cmd_ber_sweep(args: argparse.Namespace) -> int:
    """Handler for 'vcmod ber-sweep'.

    Loads the experiment, runs the sweep, appends the records to the CSV
    file and writes the JSON summary (records, thresholds at BER
    1.81×10⁻³ and the configuration echo) into the output directory.

    Returns:
        Exit code (0 for success, 1 for failure).
    """
    _setup(args)
    try:
        cfg = _load(args)
        if getattr(args, "debug", False):
            print("CONFIGURATION PROVENANCE")
            _print_provenance(cfg, cfg["_provenance"])
        experiment = build_experiment(cfg)
        records = run_experiment(experiment)
        out_dir = Path(cfg["output"]["dir"])
        csv_path = out_dir / cfg["output"]["csv"]
        summary_path = out_dir / cfg["output"]["summary"]
        write_records(csv_path, records)
        write_summary(summary_path, records, config_echo(cfg))
    except VCError as err:
        return _fail(args, err)

    print("=" * 70)
    print("BER SWEEP RESULTS")
    print("=" * 70)
    print(f"{'scheme':<32} {'snr_db':>8} {'bits':>10} {'errors':>7} {'ber':>12}")
    for r in records:
        print(
            f"{r.scheme:<32} {r.snr_db:>8.3f} {r.bits:>10d} {r.errors:>7d} "
            f"{r.postfec_ber:>12.6e}"
        )
    for scheme, snr in thresholds(records).items():
        where = f"{snr:.3f} dB" if snr is not None else "not crossed"
        print(f"Threshold {scheme}: {where}")
    print("=" * 70)
    print(f"Records: {csv_path}")
    print(f"Summary: {summary_path}")
    return 0


def cmd_mi_levels(args: argparse.Namespace) -> int:
    """Handler for 'vcmod mi-levels'.

    Estimates the per-level conditional MI of the experiment's constellation
    and mapping at every SNR of its grid and writes the curves as CSV.

    Returns:
        Exit code (0 for success, 1 for failure).
    """
    _setup(args)
    try:
        cfg = _load(args)
        c = build_constellation(cfg["constellation"])
        labeling = build_labeling(c, cfg["mapping"], cfg.get("chain"))
        grid = snr_grid(cfg["snr_db"])
        streams = snr_streams(int(cfg["seed"]), len(grid))
        results = [
            mi_bit_levels(
                c, labeling, snr, cfg["mi"]["scheme"], cfg["mi"]["samples"], rng
            )
            for snr, rng in zip(grid, streams, strict=True)
        ]
        out = Path(cfg["output"]["dir"]) / cfg["output"]["mi"]
        write_mi(out, results)
    except VCError as err:
        return _fail(args, err)

    for result in results:
        levels = " ".join(f"{level.mi:.4f}" for level in result.levels)
        print(
            f"snr_db={result.snr_db:.3f} levels=[{levels}] "
            f"sum={result.total:.4f} I(Y;X)={result.full_mi:.4f}"
        )
    print(f"MI curves: {out}")
    return 0


def cmd_rate_plan(args: argparse.Namespace) -> int:
    """Handler for 'vcmod rate-plan'.

    Without ``--config``, lists the simulated rate plans with their
    closed-form total rates. With ``--config``, estimates the per-level MI
    of the experiment's SP or hybrid mapping at each SNR (or at
    ``--snr-db``) and prints the capacity-rule code rates.

    Returns:
        Exit code (0 for success, 1 for failure).
    """
    _setup(args)
    if not getattr(args, "config", None):
        try:
            rows = [(plan, plan_total_rate(plan)) for plan in RATE_PLANS]
        except VCError as err:
            return _fail(args, err)
        for plan, total in rows:
            rates = ",".join(str(r) for r in plan.rates)
            chain = plan.chain or "-"
            print(
                f"{plan.name:<24} chain={chain:<16} rates={rates:<10} "
                f"R_tot={float(total):.3f} published={plan.total}"
            )
        return 0

    try:
        cfg = _load(args)
        if cfg["mapping"] == "gray":
            raise ConfigError("rate-plan needs an SP or hybrid mapping")
        c = build_constellation(cfg["constellation"])
        labeling = build_labeling(c, cfg["mapping"], cfg.get("chain"))
        widths = labeling.level_widths
        snr_values = (
            (float(args.snr_db),)
            if getattr(args, "snr_db", None) is not None
            else snr_grid(cfg["snr_db"])
        )
        streams = snr_streams(int(cfg["seed"]), len(snr_values))
        lines = []
        for snr, rng in zip(snr_values, streams, strict=True):
            mi = mi_bit_levels(c, labeling, snr, "mlcm", cfg["mi"]["samples"], rng)
            level_mi = [level.mi for level in mi.levels[: len(widths)]]
            rates = capacity_rule_rates(level_mi, widths)
            total = mlcm_total_rate(c.n, c.m, widths, rates)
            lines.append(
                f"snr_db={snr:.3f} "
                f"level_mi=[{' '.join(f'{v:.4f}' for v in level_mi)}] "
                f"rates={','.join(str(r) for r in rates)} R_tot={float(total):.3f}"
            )
    except VCError as err:
        return _fail(args, err)

    for line in lines:
        print(line)
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    """Handler for 'vcmod validate'.

    Checks an experiment file against the schema without building anything.

    Returns:
        Exit code (0 for a valid experiment, 1 otherwise).
    """
    _setup(args)
    experiment = Path(args.experiment).resolve()
    print(f"Validating experiment: {experiment}")
    print()
    result = validate_experiment(experiment)

    print("=" * 70)
    print("VALIDATION RESULTS")
    print("=" * 70)
    print(f"Experiment:  {result.config_path}")
    print(f"Status:      {result.status.upper()}")
    print()
    if result.warnings:
        print(f"Warnings ({len(result.warnings)}):")
        for warning in result.warnings:
            print(f"  [WARNING] {warning}")
        print()
    if result.errors:
        print(f"Errors ({len(result.errors)}):")
        for error in result.errors:
            print(f"  [X] {error}")
        print()
    print("=" * 70)

    if getattr(args, "debug", False) and result.status == "valid":
        try:
            cfg = load_experiment(experiment)
        except ConfigError as err:
            print(f"Could not load the configuration: {err}")
        else:
            print()
            print("CONFIGURATION PROVENANCE")
            print("-" * 70)
            _print_provenance(cfg, cfg["_provenance"])
            print("-" * 70)

    if result.status == "valid":
        print()
        print("[SUCCESS] Experiment is valid!")
        return 0
    print()
    print(f"[FAILED] Experiment validation failed with {len(result.errors)} error(s).")
    return 1


def _package_version() -> str:
    try:
        return version("vcmod")
    except PackageNotFoundError:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    """Builds the argument parser with all subcommands."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Path to an experiment YAML file")
    common.add_argument("--seed", type=int, help="Master random seed (default 0)")
    common.add_argument("--out", help="Output file or directory")
    common.add_argument("--threads", type=int, help="Worker threads for sweeps")
    common.add_argument(
        "-v", "--verbose", action="store_true", help="Show progress and details"
    )
    common.add_argument(
        "-d",
        "--debug",
        action="store_true",
        help="Show detailed debugging output (implies --verbose)",
    )

    parser = argparse.ArgumentParser(
        prog="vcmod",
        description="Voronoi constellations, labelings and coded modulation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version", action="version", version=f"vcmod {_package_version()}"
    )
    subparsers = parser.add_subparsers(
        dest="command", help="Available commands", required=True
    )

    p = subparsers.add_parser(
        "lattice-quantize",
        parents=[common],
        help="Nearest lattice point and squared distance",
        description=(
            "Quantize a point to a lattice.\n\n"
            "Examples:\n"
            "  vcmod lattice-quantize E8 0.4 0.6 0.1 0 0 0 0 0.2\n"
            "  vcmod lattice-quantize 2Leech24R24 --input points.txt"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("lattice", help="Lattice name such as Z4, D8, E8, 8E8, BW16")
    p.add_argument("point", nargs="*", type=float, help="Coordinates of one point")
    p.add_argument("--input", help="Text file with one point per line")
    p.set_defaults(func=cmd_lattice_quantize)

    p = subparsers.add_parser(
        "vc-info",
        parents=[common],
        help="Size, spectral efficiency and energy of a constellation",
    )
    p.add_argument("name", help="Constellation name (E8-24, L16-92, 64-QAM, TDHQ2)")
    p.add_argument(
        "--energy",
        choices=("auto", "exact", "monte-carlo"),
        default="auto",
        help="How to compute Es (default: exact up to 2^20 points)",
    )
    p.add_argument(
        "--samples", type=int, default=10_000, help="Monte-Carlo energy samples"
    )
    p.set_defaults(func=cmd_vc_info)

    p = subparsers.add_parser(
        "map-roundtrip", parents=[common], help="Check a labeling is a bijection"
    )
    p.add_argument("--vc", required=True, help="Constellation name")
    p.add_argument("--mapping", choices=("gray", "sp", "hybrid"), default="gray")
    p.add_argument("--chain", help="Partition or hybrid chain name")
    p.add_argument(
        "--samples",
        type=int,
        help="Random labels to check (default: all labels when M <= 2^20)",
    )
    p.set_defaults(func=cmd_map_roundtrip)

    p = subparsers.add_parser(
        "llr-eval", parents=[common], help="Max-log LLRs of received symbols"
    )
    p.add_argument("--vc", required=True, help="Constellation name")
    p.add_argument("--mapping", choices=("gray", "sp", "hybrid"), default="gray")
    p.add_argument("--chain", help="Partition or hybrid chain name")
    p.add_argument("--input", required=True, help="Received symbols, one per line")
    p.add_argument("--snr-db", type=float, help="Es/sigma2_tot in dB")
    p.add_argument("--sigma2", type=float, help="Noise variance per two dimensions")
    p.add_argument("--method", choices=LLR_METHODS, default="auto")
    p.add_argument("--level", type=int, default=1, help="Coded level (SP/hybrid)")
    p.add_argument("--radius2", type=int, help="Ball radius R^2")
    p.add_argument("--default", type=float, help="Default distance r (default 20)")
    p.set_defaults(func=cmd_llr_eval)

    p = subparsers.add_parser(
        "ber-sweep",
        parents=[common],
        help="Monte-Carlo BER sweep from an experiment file",
        description=(
            "Run a BER sweep.\n\n"
            "Examples:\n"
            "  vcmod ber-sweep --config experiments/qam64-gray.yaml\n"
            "  vcmod ber-sweep --config experiments/e8-24-hybrid.yaml --threads 4"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.set_defaults(func=cmd_ber_sweep)

    p = subparsers.add_parser(
        "mi-levels", parents=[common], help="Per-level mutual information curves"
    )
    p.set_defaults(func=cmd_mi_levels)

    p = subparsers.add_parser(
        "rate-plan", parents=[common], help="Rate plans and capacity-rule rates"
    )
    p.add_argument("--snr-db", type=float, help="Single SNR instead of the grid")
    p.set_defaults(func=cmd_rate_plan)

    p = subparsers.add_parser(
        "validate", parents=[common], help="Validate an experiment file"
    )
    p.add_argument("experiment", help="Path to the experiment YAML file")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> None:
    """Main entry point, registered as the 'vcmod' console script."""
    args = build_parser().parse_args(argv)
    sys.exit(args.func(args))


if __name__ == "__main__":
    main()
