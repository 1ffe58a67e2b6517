"""Delay-Doppler reversal (DDR) matched filtering.

The receiver filter is a conjugated, delay-reversed, Doppler-negated,
phase-corrected copy of the channel estimate, normalized to unit energy
jointly across antennas.  Composing the filter with the channel (twisted
convolution) concentrates the channel energy into one central tap whose
gain is the channel's Frobenius norm; detection equalizes against that
single peak.  Residual cascade taps are interference, handled downstream
as noise-like terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import DDChannel, DegenerateChannelError, PathTap
from .modem import (
    Constellation,
    TimeSignal,
    demap_symbols,
    devectorize,
    grid_to_symbols,
    sfft,
    wigner,
)
from .propagation import twisted_apply

__all__ = [
    "DdrFilter",
    "OpCounter",
    "build_ddr_filter",
    "ddr_filter_signal",
    "cascade",
    "peak_gain",
    "ddr_equalize",
    "ddr_detect",
]


@dataclass
class OpCounter:
    """Accumulates the complex multiplications spent in filtering."""

    complex_multiplications: int = 0

    def add(self, n: int) -> None:
        self.complex_multiplications += n


@dataclass(frozen=True)
class DdrFilter:
    """Per-antenna matched-filter responses with one joint normalization.

    The filter tap energy sums to one across the whole bank, so filtered
    noise keeps its per-sample variance after the antenna sum.
    """

    channels: tuple[DDChannel, ...]
    norm_used: float


def _as_bank(est: DDChannel | Sequence[DDChannel]) -> tuple[DDChannel, ...]:
    if isinstance(est, DDChannel):
        return (est,)
    return tuple(est)


def joint_norm(channels: Sequence[DDChannel]) -> float:
    return float(np.sqrt(sum(abs(t.gain) ** 2 for ch in channels for t in ch.taps)))


def build_ddr_filter(est: DDChannel | Sequence[DDChannel]) -> DdrFilter:
    """Matched filter for a channel estimate (single antenna or a bank).

    A channel tap (l, k, a) becomes the filter tap
    (L-1-l, -k, conj(a) * exp(j*2*pi*k*l/(MN)) / norm) with
    norm = sqrt(total tap energy over all antennas).  The phase factor makes
    every matched tap pair land on the cascade's central peak with zero
    phase, so the peak gain is real and positive.
    """
    channels = _as_bank(est)
    norm = joint_norm(channels)
    if norm == 0.0:
        raise DegenerateChannelError("cannot match an all-zero channel")
    filters = []
    for ch in channels:
        frame_len = ch.M * ch.N
        span_edge = ch.delay_span - 1
        taps = tuple(
            PathTap(
                delay=span_edge - t.delay,
                doppler=-t.doppler,
                gain=np.conj(t.gain) * np.exp(2j * np.pi * t.doppler * t.delay / frame_len) / norm,
            )
            for t in ch.taps
        )
        filters.append(
            DDChannel(
                M=ch.M,
                N=ch.N,
                delay_span=ch.delay_span,
                doppler_span=ch.doppler_span,
                taps=tuple(sorted(taps, key=lambda t: (t.delay, t.doppler))),
            )
        )
    return DdrFilter(channels=tuple(filters), norm_used=norm)


def ddr_filter_signal(
    y_list: Sequence[TimeSignal],
    filt: DdrFilter,
    counter: OpCounter | None = None,
) -> TimeSignal:
    """Filter each antenna's frame with its matched response and sum.

    Costs exactly (tap count) * MN complex multiplications per antenna,
    which the optional counter records.
    """
    if len(y_list) != len(filt.channels):
        raise ValueError(f"{len(y_list)} frames for {len(filt.channels)} filters")
    total = None
    for y, g in zip(y_list, filt.channels):
        out = twisted_apply(y, g)
        if counter is not None:
            counter.add(g.num_taps * g.M * g.N)
        total = out.samples if total is None else total + out.samples
    return TimeSignal(total, cp_len=0)


def cascade(second: DDChannel, first: DDChannel) -> DDChannel:
    """Twisted convolution: the response equivalent to ``first`` then ``second``.

    Delays and Dopplers add tap-wise; each product picks up the coupling
    phase exp(j*2*pi*(second tap's Doppler)*(first tap's delay)/(MN)).  The
    result spans delays 0..(L1+L2-2) and Dopplers within the summed spans.
    """
    if (first.M, first.N) != (second.M, second.N):
        raise ValueError("cascade needs matching grid dimensions")
    frame_len = first.M * first.N
    merged: dict[tuple[int, int], complex] = {}
    for t1 in first.taps:
        for t2 in second.taps:
            l = t1.delay + t2.delay
            k = t1.doppler + t2.doppler
            val = t1.gain * t2.gain * np.exp(2j * np.pi * t2.doppler * t1.delay / frame_len)
            merged[(l, k)] = merged.get((l, k), 0j) + val
    taps = tuple(PathTap(l, k, g) for (l, k), g in sorted(merged.items()))
    return DDChannel(
        M=first.M,
        N=first.N,
        delay_span=first.delay_span + second.delay_span - 1,
        doppler_span=first.doppler_span + second.doppler_span,
        taps=taps,
    )


def peak_gain(h: DDChannel | Sequence[DDChannel]) -> float:
    """The cascade's central-peak value: the joint Frobenius norm of the bank."""
    norm = joint_norm(_as_bank(h))
    if norm == 0.0:
        raise DegenerateChannelError("all-zero channel has no peak")
    return norm


def ddr_equalize(yhat: TimeSignal, peak: float, L: int, M: int, N: int):
    """Undo the cascade's central delay and peak gain; return the DD-domain grid."""
    if peak <= 0:
        raise DegenerateChannelError("peak gain must be positive")
    aligned = TimeSignal(np.roll(yhat.samples, -(L - 1)) / peak, cp_len=0)
    return sfft(wigner(devectorize(aligned, M, N)))


def ddr_detect(
    yhat: TimeSignal,
    peak: float,
    L: int,
    M: int,
    N: int,
    c: Constellation,
) -> np.ndarray:
    """Slice the equalized grid to bits."""
    grid = ddr_equalize(yhat, peak, L, M, N)
    return demap_symbols(grid_to_symbols(grid), c)
