"""Command-line entry point for the flight-sweep simulator."""

from __future__ import annotations

import argparse
import sys

from .geometry import ConfigurationError
from .harness import (
    parse_config,
    run_experiment,
    summarize,
    with_overrides,
    write_results,
)


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", required=True, help="path to a key=value config file")
    parser.add_argument("--out", help="output file (default: config output.path)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format override")
    parser.add_argument("--parallel", type=int, default=1, metavar="K",
                        help="number of worker processes (default 1)")


def _float_list(raw: str) -> list[float]:
    return [float(tok) for tok in raw.split(",") if tok.strip()]


def _int_list(raw: str) -> list[int]:
    return [int(tok) for tok in raw.split(",") if tok.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavsec",
        description="Secrecy-rate sweeps for a UAV directional-modulation link",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the sweep defined by the config")
    _add_common(run)

    power = sub.add_parser("sweep-power", help="run with an overridden transmit-power sweep")
    _add_common(power)
    power.add_argument("--powers", type=_float_list, required=True,
                       help="comma-separated transmit powers in dBm")

    ant = sub.add_parser("sweep-antennas", help="run with an overridden antenna-count sweep")
    _add_common(ant)
    ant.add_argument("--antennas", type=_int_list, required=True,
                     help="comma-separated antenna counts")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_config(args.config)
        if args.command == "sweep-power":
            cfg = with_overrides(cfg, power_sweep_dbm=args.powers)
        elif args.command == "sweep-antennas":
            cfg = with_overrides(cfg, antenna_sweep=args.antennas)
        records = run_experiment(cfg, parallel=max(1, args.parallel))
        out = args.out or cfg.output_path
        fmt = args.format or cfg.output_format
        write_results(records, fmt, out)
    except (ConfigurationError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(records)} records to {out} ({fmt})")
    for row in summarize(records):
        print(
            f"strategy={row['strategy']} M={row['M']} Ps={row['Ps_dbm']:g}dBm "
            f"mean_SR={row['mean_secrecy_rate']:.6f} "
            f"SSR={row['ssr_per_point_clamped']:.6f} "
            f"SSR_sum_clamped={row['ssr_sum_clamped']:.6f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
