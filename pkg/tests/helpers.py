"""Shared test utilities: brute-force oracles and random channel builders.

The dense-matrix oracle builds the full MN x MN time-domain operator of a
sparse channel directly from the per-tap kernel, independently of the
implementation under test, so sparse results can be checked against plain
matrix algebra.
"""

from __future__ import annotations

import numpy as np

from otfs_ddr import DDChannel, PathTap


def dense_time_matrix(h: DDChannel) -> np.ndarray:
    """Explicit MN x MN operator: row c, column (c - delay) mod MN per tap."""
    frame_len = h.M * h.N
    out = np.zeros((frame_len, frame_len), dtype=complex)
    for tap in h.taps:
        for c in range(frame_len):
            out[c, (c - tap.delay) % frame_len] += tap.gain * np.exp(
                2j * np.pi * tap.doppler * (c - tap.delay) / frame_len
            )
    return out


def random_sparse_channel(
    rng: np.random.Generator,
    M: int,
    N: int,
    delay_span: int,
    doppler_span: int,
    num_taps: int,
) -> DDChannel:
    """Random channel with exactly num_taps distinct (delay, doppler) cells."""
    cells = [
        (l, k)
        for l in range(delay_span)
        for k in range(-(doppler_span // 2), doppler_span // 2 + 1)
    ]
    if num_taps > len(cells):
        raise ValueError("more taps than grid cells")
    chosen = rng.choice(len(cells), size=num_taps, replace=False)
    taps = tuple(
        PathTap(cells[i][0], cells[i][1], complex(rng.normal(), rng.normal()))
        for i in sorted(chosen)
    )
    return DDChannel(M=M, N=N, delay_span=delay_span, doppler_span=doppler_span, taps=taps)


def zero_doppler_channel(
    rng: np.random.Generator, M: int, N: int, delay_span: int, num_taps: int
) -> DDChannel:
    delays = rng.choice(delay_span, size=min(num_taps, delay_span), replace=False)
    taps = tuple(
        PathTap(int(l), 0, complex(rng.normal(), rng.normal())) for l in sorted(delays)
    )
    return DDChannel(M=M, N=N, delay_span=delay_span, doppler_span=0, taps=taps)


def binomial_separated(err_low: int, err_high: int, bits: int, z: float = 1.96) -> bool:
    """True when the higher error rate exceeds the lower beyond a z-level margin."""
    p1 = err_low / bits
    p2 = err_high / bits
    margin = z * np.sqrt(p1 * (1 - p1) / bits + p2 * (1 - p2) / bits)
    return (p2 - p1) > margin
