#!/usr/bin/env python3
"""Diversity, modulation, and mobility trends for the matched-filter receiver.

Fixes the SNR and sweeps one variable at a time: antenna count, then
constellation order, then vehicle speed. Prints a table per sweep.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from _common import DESK_SCALED, GRID_FACTOR

from otfs_ddr import run_sweep
from otfs_ddr.config import override


def _ber(cfg, workers):
    (rec,) = run_sweep(cfg, workers=workers)
    return rec.ber, rec.frames


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--snr", type=float, default=10.0)
    ap.add_argument("--frames", type=int, default=256)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    base = override(
        DESK_SCALED,
        snr_db=(args.snr,),
        receivers=("ddr",),
        max_frames=args.frames,
        target_bit_errors=10**9,
        seed=args.seed,
    )

    print(f"antenna sweep at {args.snr:.0f} dB, qpsk")
    for q in (1, 2, 4, 8):
        ber, frames = _ber(override(base, num_antennas=q), args.workers)
        print(f"  Q={q}: ber={ber:.3e} ({frames} frames)")

    print(f"modulation sweep at {args.snr:.0f} dB, Q=4")
    for mod in ("bpsk", "qpsk", "8psk"):
        ber, frames = _ber(override(base, num_antennas=4, modulation=mod), args.workers)
        print(f"  {mod}: ber={ber:.3e} ({frames} frames)")

    print(f"speed sweep at {args.snr:.0f} dB, qpsk, Q=1 (speeds pre-scaled by {GRID_FACTOR}x)")
    for kmph in (100, 200, 300, 500):
        ber, frames = _ber(
            override(base, speed_kmph=float(kmph * GRID_FACTOR)), args.workers
        )
        print(f"  {kmph} km/h equivalent: ber={ber:.3e} ({frames} frames)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
