"""Command-line entry points.

    onebit-mimo mse-sweep  [--config F] [--out PATH] [--seed N] [--trials N]
                           [--threads N] [--m_list A,B] [--k N]
                           [--snr_db_list A,B] [--rho_mode both|pilot]
                           [--out_path PATH]
    onebit-mimo rate-sweep (same flags)
    onebit-mimo validate   [--seed N]

Exit codes: 0 success, 1 invalid configuration, 2 validation failure.
Config-file keys and CLI flags share names; flags win. `--threads` only
changes wall-clock time, never a single output byte.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import (
    ConfigError,
    build_spec,
    parse_config_file,
    run_mse_sweep,
    run_rate_sweep,
    validate,
    write_csv,
)

_SWEEPS = {
    "mse-sweep": ("mse_fig1", run_mse_sweep),
    "rate-sweep": ("rate_fig2", run_rate_sweep),
}


def _add_sweep_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--out", help="output CSV path (same as --out_path)")
    p.add_argument("--seed", type=int, help="master seed (u64)")
    p.add_argument("--trials", type=int, help="Monte Carlo trials per grid cell")
    p.add_argument("--threads", type=int, help="worker threads (speed only)")
    p.add_argument("--m_list", help="comma-separated antenna counts")
    p.add_argument("--k", type=int, help="user count (pilot length tau = k)")
    p.add_argument("--snr_db_list", help="comma-separated SNR grid in dB")
    p.add_argument("--rho_mode", choices=("both", "pilot"),
                   help="which powers track the sweep SNR")
    p.add_argument("--out_path", help="output CSV path")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onebit-mimo",
        description="One-bit massive MIMO estimation and rate experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SWEEPS:
        _add_sweep_flags(sub.add_parser(name, help=f"run the {name} experiment"))
    v = sub.add_parser("validate", help="run the reduced-scale invariant suite")
    v.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "validate":
        report, ok = validate(args.seed)
        sys.stdout.write(report)
        return 0 if ok else 2

    experiment, runner = _SWEEPS[args.command]
    try:
        settings: dict[str, str] = {}
        if args.config:
            settings.update(parse_config_file(args.config))
        for key in ("m_list", "k", "snr_db_list", "rho_mode", "trials", "seed", "threads"):
            val = getattr(args, key)
            if val is not None:
                settings[key] = str(val)
        if args.out_path is not None:
            settings["out_path"] = args.out_path
        if args.out is not None:
            settings["out_path"] = args.out
        spec, out_path = build_spec(experiment, settings)
        rows = runner(spec)
        write_csv(rows, out_path)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(f"wrote {len(rows)} rows to {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
