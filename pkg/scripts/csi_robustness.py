#!/usr/bin/env python3
"""BER sensitivity to channel-estimate errors.

Perturbs the receiver's channel knowledge (gains and tap positions) by a
relative radius epsilon while the true channel stays fixed, and reports
BER as epsilon grows.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from _common import DESK_SCALED, parse_float_list

from otfs_ddr import run_sweep
from otfs_ddr.config import override


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--snr", type=float, default=10.0)
    ap.add_argument("--antennas", type=int, default=4)
    ap.add_argument("--epsilons", default="0,0.01,0.02,0.05,0.1,0.2")
    ap.add_argument("--frames", type=int, default=256)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    base = override(
        DESK_SCALED,
        snr_db=(args.snr,),
        receivers=("ddr",),
        num_antennas=args.antennas,
        max_frames=args.frames,
        target_bit_errors=10**9,
        seed=args.seed,
    )

    print(f"csi error sweep at {args.snr:.0f} dB, Q={args.antennas}, qpsk")
    baseline = None
    for eps in parse_float_list(args.epsilons):
        (rec,) = run_sweep(override(base, csi_epsilon=eps), workers=args.workers)
        if baseline is None:
            baseline = rec.ber
        rel = rec.ber / baseline if baseline > 0 else float("inf")
        print(f"  eps={eps:<5g} ber={rec.ber:.3e}  x{rel:.2f} of clean")
    return 0


if __name__ == "__main__":
    sys.exit(main())
