"""Applying delay-Doppler responses to time-domain frames.

The same cyclic input-output relation serves both physical channels and
receiver-side matched filters: each tap delays the frame cyclically, applies
a Doppler phase ramp anchored at the tap's own delay, and scales by its gain.
AWGN and the multi-antenna fan-out live here too.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import DDChannel
from .modem import TimeSignal

__all__ = [
    "NoiseModel",
    "AntennaBank",
    "twisted_apply",
    "add_awgn",
    "transmit",
]


@dataclass(frozen=True)
class NoiseModel:
    """Per-sample complex noise variance."""

    sigma2: float

    def __post_init__(self) -> None:
        if self.sigma2 <= 0:
            raise ValueError("sigma2 must be > 0")


@dataclass(frozen=True)
class AntennaBank:
    """Independent per-antenna channels sharing one grid and tap-span layout."""

    channels: tuple[DDChannel, ...]

    def __post_init__(self) -> None:
        if not self.channels:
            raise ValueError("bank needs at least one antenna")
        first = self.channels[0]
        for ch in self.channels[1:]:
            if (ch.M, ch.N, ch.delay_span, ch.doppler_span) != (
                first.M,
                first.N,
                first.delay_span,
                first.doppler_span,
            ):
                raise ValueError("all antennas must share M, N and tap spans")

    @property
    def Q(self) -> int:
        return len(self.channels)


def twisted_apply(x: TimeSignal, h: DDChannel) -> TimeSignal:
    """Pass a CP-free frame through a sparse delay-Doppler response.

    y[c] = sum over taps of gain * x[(c - l) mod MN] * exp(j*2*pi*k*(c - l)/(MN)),
    cyclic over the MN-sample frame.  Linear in both the input and the tap
    gains; a single unit-gain tap preserves energy exactly.
    """
    frame_len = h.M * h.N
    if x.cp_len:
        raise ValueError("twisted_apply expects a CP-free frame")
    if x.samples.size != frame_len:
        raise ValueError(f"expected {frame_len} samples, got {x.samples.size}")
    y = np.zeros(frame_len, dtype=complex)
    idx = np.arange(frame_len)
    for tap in h.taps:
        delayed = np.roll(x.samples, tap.delay)
        if tap.doppler:
            ramp = np.exp(2j * np.pi * tap.doppler * (idx - tap.delay) / frame_len)
            y += tap.gain * delayed * ramp
        else:
            y += tap.gain * delayed
    return TimeSignal(y, cp_len=0)


def add_awgn(y: TimeSignal, noise: NoiseModel, rng: np.random.Generator) -> TimeSignal:
    """Add i.i.d. circular complex Gaussian noise of total variance sigma2."""
    scale = np.sqrt(noise.sigma2 / 2.0)
    n = rng.normal(0.0, scale, y.samples.size) + 1j * rng.normal(0.0, scale, y.samples.size)
    return TimeSignal(y.samples + n, cp_len=y.cp_len)


def transmit(
    x: TimeSignal,
    bank: AntennaBank,
    noise: NoiseModel,
    rng: np.random.Generator,
) -> list[TimeSignal]:
    """Fan one frame out through every antenna's channel, with independent noise."""
    return [add_awgn(twisted_apply(x, ch), noise, rng) for ch in bank.channels]
