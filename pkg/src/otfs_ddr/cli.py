"""Command-line front end.

``simulate`` runs a BER sweep and writes CSV; ``analyze`` draws channel
realizations and reports SINR-gain statistics.  Exit codes: 0 success,
1 configuration error, 2 runtime or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import math
import statistics
import sys
from pathlib import Path
from typing import IO, Sequence

from .channel import gen_channel, jakes_doppler
from .config import ConfigError, load_config, make_profile, override, parse_snr_spec
from .harness import (
    ROLE_CHANNEL,
    ROLE_COMMON_DOPPLER,
    emit_csv,
    run_sweep,
    snr_to_sigma2,
    trial_rng,
)
from .sinr import sinr_gain

__all__ = ["main", "build_parser"]

ANALYZE_HEADER = (
    "snr_db",
    "realizations",
    "median_gain",
    "mean_gain",
    "median_sinr_ddr_db",
    "median_sinr_dp_db",
    "mean_sig_ratio",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="otfs-ddr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a BER sweep and write CSV")
    sim.add_argument("--config", required=True, help="path to a key = value config file")
    sim.add_argument("--out", default="results.csv", help="output CSV path (default results.csv)")
    sim.add_argument("--snr", help="override SNR points: comma list or start:stop:step")
    sim.add_argument("--receivers", help="comma subset of ddr,dp,tr")
    sim.add_argument("--speed-kmph", type=float, dest="speed_kmph")
    sim.add_argument("--mod", choices=["bpsk", "qpsk", "8psk"], help="modulation override")
    sim.add_argument("--antennas", type=int, help="receive antenna count")
    sim.add_argument("--csi-epsilon", type=float, dest="csi_epsilon")
    sim.add_argument("--common-doppler", action="store_true", default=None,
                     help="give every path one shared Doppler shift per trial")
    sim.add_argument("--frames", type=int, help="max frames per SNR point")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--workers", type=int, default=1, help="parallel worker processes")

    ana = sub.add_parser("analyze", help="SINR-gain statistics over channel realizations")
    ana.add_argument("--config", required=True)
    ana.add_argument("--out", help="output CSV path (default stdout)")
    return parser


def _simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    cfg = override(
        cfg,
        snr_db=parse_snr_spec(args.snr) if args.snr else None,
        receivers=tuple(t.strip().lower() for t in args.receivers.split(",")) if args.receivers else None,
        speed_kmph=args.speed_kmph,
        modulation=args.mod,
        num_antennas=args.antennas,
        csi_epsilon=args.csi_epsilon,
        common_doppler=args.common_doppler,
        max_frames=args.frames,
        seed=args.seed,
    )
    if args.workers < 1:
        raise ConfigError("workers must be >= 1")
    records = run_sweep(cfg, workers=args.workers)
    emit_csv(records, args.out)
    return 0


def _analyze_rows(cfg) -> list[list[object]]:
    profile = make_profile(cfg)
    rows: list[list[object]] = []
    realizations = cfg.max_frames
    for snr_index, snr_db in enumerate(cfg.snr_db):
        sigma2 = snr_to_sigma2(snr_db)
        reports = []
        for i in range(realizations):
            common_k = None
            if cfg.common_doppler:
                common_k = jakes_doppler(
                    profile.speed_mps,
                    profile.carrier_hz,
                    cfg.n,
                    profile.delta_f_hz,
                    trial_rng(cfg.seed, snr_index, i, ROLE_COMMON_DOPPLER),
                )
            h = gen_channel(profile, trial_rng(cfg.seed, snr_index, i, ROLE_CHANNEL), common_doppler=common_k)
            reports.append(sinr_gain(h, 1.0, sigma2))
        rows.append(
            [
                snr_db,
                realizations,
                statistics.median(r.gain for r in reports),
                statistics.fmean(r.gain for r in reports),
                10.0 * math.log10(statistics.median(r.sinr_ddr for r in reports)),
                10.0 * math.log10(statistics.median(r.sinr_dp for r in reports)),
                statistics.fmean(r.sig_ratio for r in reports),
            ]
        )
    return rows


def _write_rows(rows: Sequence[Sequence[object]], destination: IO[str]) -> None:
    writer = csv.writer(destination, lineterminator="\n")
    writer.writerow(ANALYZE_HEADER)
    writer.writerows(rows)


def _analyze(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    rows = _analyze_rows(cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            _write_rows(rows, f)
    else:
        _write_rows(rows, sys.stdout)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems; those are configuration errors here.
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "simulate":
            return _simulate(args)
        return _analyze(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failures map to exit 2 by contract
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
