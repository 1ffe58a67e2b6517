"""Comparison receivers: direct processing and classic one-dimensional time reversal.

Direct processing (DP) locks onto the single strongest channel tap,
compensates its delay and Doppler, and treats every other path as
interference; antennas are combined with maximal-ratio weights.

Classic time reversal (TR) collapses the channel's Doppler axis into a
one-dimensional delay response, matched-filters with its conjugate reverse,
and compensates one common Doppler shift (the dominant tap's), standing in
for a receiver with perfect time-frequency synchronization but no
delay-Doppler processing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import DDChannel, DegenerateChannelError, PathTap
from .modem import (
    Constellation,
    Grid,
    TimeSignal,
    demap_symbols,
    devectorize,
    grid_to_symbols,
    sfft,
    wigner,
)
from .propagation import twisted_apply

__all__ = [
    "DominantTap",
    "TrFilter",
    "find_dominant_tap",
    "dp_equalize",
    "dp_detect",
    "build_tr_filter",
    "tr_equalize",
    "tr_detect",
]


@dataclass(frozen=True)
class DominantTap:
    """The strongest tap of a channel: the one DP detects against."""

    delay: int
    doppler: int
    gain: complex


@dataclass(frozen=True)
class TrFilter:
    """Doppler-collapsed matched filter.

    ``taps_1d`` holds one delay-axis vector per antenna (a Q x L array),
    jointly normalized to unit energy.  ``k_sync`` is the single Doppler
    index the receiver compensates; ``norm`` is the normalization constant,
    which is also the combined filter-channel peak used for equalization.
    """

    taps_1d: np.ndarray
    k_sync: int
    norm: float


def find_dominant_tap(h: DDChannel) -> DominantTap:
    """Largest-magnitude tap; ties resolved to the smallest delay, then Doppler."""
    if not h.taps:
        raise DegenerateChannelError("empty channel has no dominant tap")
    best = None
    for tap in h.taps:  # taps are sorted by (delay, doppler)
        if best is None or abs(tap.gain) > abs(best.gain):
            best = tap
    return DominantTap(delay=best.delay, doppler=best.doppler, gain=best.gain)


def _as_bank(h: DDChannel | Sequence[DDChannel]) -> tuple[DDChannel, ...]:
    if isinstance(h, DDChannel):
        return (h,)
    return tuple(h)


def _dp_combine(y_list: Sequence[TimeSignal], h_list: Sequence[DDChannel]) -> tuple[np.ndarray, int, int]:
    doms = [find_dominant_tap(h) for h in h_list]
    weight_sum = sum(abs(d.gain) ** 2 for d in doms)
    if weight_sum == 0.0:
        raise DegenerateChannelError("dominant taps carry no energy")
    M, N = h_list[0].M, h_list[0].N
    frame_len = M * N
    idx = np.arange(frame_len)
    combined = np.zeros(frame_len, dtype=complex)
    for y, dom in zip(y_list, doms):
        if y.samples.size != frame_len:
            raise ValueError(f"expected {frame_len} samples, got {y.samples.size}")
        # Undo the dominant tap's delay, then its Doppler ramp; the desired
        # term becomes gain * x[c], ready for maximal-ratio weighting.
        z = np.roll(y.samples, -dom.delay)
        if dom.doppler:
            z = z * np.exp(-2j * np.pi * dom.doppler * idx / frame_len)
        combined += np.conj(dom.gain) * z
    return combined / weight_sum, M, N


def dp_equalize(y_list: Sequence[TimeSignal], h_list: Sequence[DDChannel], M: int, N: int) -> Grid:
    """Dominant-tap equalization with MRC across antennas; returns the DD grid."""
    combined, m, n = _dp_combine(y_list, _as_bank(h_list))
    if (m, n) != (M, N):
        raise ValueError("grid dimensions disagree with the channel bank")
    return sfft(wigner(devectorize(TimeSignal(combined), M, N)))


def dp_detect(
    y_list: Sequence[TimeSignal],
    h_list: Sequence[DDChannel],
    M: int,
    N: int,
    c: Constellation,
) -> np.ndarray:
    """Slice the DP-equalized grid to bits."""
    return demap_symbols(grid_to_symbols(dp_equalize(y_list, h_list, M, N)), c)


def build_tr_filter(h: DDChannel | Sequence[DDChannel]) -> TrFilter:
    """Collapse Doppler, then conjugate-reverse the delay profile per antenna.

    The collapse sums each delay bin's tap gains coherently (time reference
    at the frame start).  The compensated Doppler is the bank's dominant
    tap's index, and the filter is normalized jointly across antennas.
    """
    channels = _as_bank(h)
    L = channels[0].delay_span
    h1d = np.zeros((len(channels), L), dtype=complex)
    for q, ch in enumerate(channels):
        for tap in ch.taps:
            h1d[q, tap.delay] += tap.gain
    norm = float(np.linalg.norm(h1d))
    if norm == 0.0:
        raise DegenerateChannelError("Doppler collapse cancelled the channel")
    best = None
    for ch in channels:
        dom = find_dominant_tap(ch)
        if best is None or abs(dom.gain) > abs(best.gain):
            best = dom
    taps_1d = np.conj(h1d[:, ::-1]) / norm
    return TrFilter(taps_1d=taps_1d, k_sync=best.doppler, norm=norm)


def tr_equalize(y_list: Sequence[TimeSignal], filt: TrFilter, M: int, N: int) -> Grid:
    """Derotate, matched-filter along delay, combine, and undo the peak; DD grid out."""
    Q, L = filt.taps_1d.shape
    if len(y_list) != Q:
        raise ValueError(f"{len(y_list)} frames for {Q} filters")
    frame_len = M * N
    idx = np.arange(frame_len)
    derotate = np.exp(-2j * np.pi * filt.k_sync * idx / frame_len) if filt.k_sync else None
    total = np.zeros(frame_len, dtype=complex)
    for q in range(Q):
        z = y_list[q].samples
        if derotate is not None:
            z = z * derotate
        g = DDChannel(
            M=M,
            N=N,
            delay_span=L,
            doppler_span=0,
            taps=tuple(
                PathTap(l, 0, filt.taps_1d[q, l]) for l in range(L) if filt.taps_1d[q, l] != 0
            ),
        )
        total += twisted_apply(TimeSignal(z), g).samples
    aligned = TimeSignal(np.roll(total, -(L - 1)) / filt.norm, cp_len=0)
    return sfft(wigner(devectorize(aligned, M, N)))


def tr_detect(
    y_list: Sequence[TimeSignal],
    filt: TrFilter,
    M: int,
    N: int,
    c: Constellation,
) -> np.ndarray:
    """Slice the TR-equalized grid to bits."""
    return demap_symbols(grid_to_symbols(tr_equalize(y_list, filt, M, N)), c)
