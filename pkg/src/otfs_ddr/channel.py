"""Sparse delay-Doppler channels.

A channel is a short list of taps on the M x N delay-Doppler grid: integer
delay index, integer Doppler index, complex gain.  This module covers
quantization of physical path parameters onto the grid, random channel
generation from a delay-power profile with Jakes-distributed Doppler shifts,
and the bounded perturbation model used to emulate imperfect receiver-side
channel knowledge.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "LIGHT_SPEED_MPS",
    "EVA_DELAYS_NS",
    "EVA_POWERS_DB",
    "UnsupportableDelayError",
    "DegenerateChannelError",
    "PathTap",
    "DDChannel",
    "ChannelProfile",
    "CsiError",
    "eva_profile",
    "single_path_profile",
    "profile_spans",
    "quantize_delay",
    "jakes_doppler",
    "gen_channel",
    "perturb_csi",
    "frobenius_norm",
]

LIGHT_SPEED_MPS = 299_792_458.0

# Extended Vehicular A: 9-path delay-power profile (3GPP reference model).
EVA_DELAYS_NS = (0.0, 30.0, 150.0, 310.0, 370.0, 710.0, 1090.0, 1730.0, 2510.0)
EVA_POWERS_DB = (0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9)


class UnsupportableDelayError(ValueError):
    """A path delay quantizes beyond the frame's delay axis."""


class DegenerateChannelError(ValueError):
    """An operation that needs channel energy received an all-zero channel."""


@dataclass(frozen=True)
class PathTap:
    """One propagation path: delay bin, Doppler bin, complex gain."""

    delay: int
    doppler: int
    gain: complex


@dataclass(frozen=True)
class DDChannel:
    """Sparse tap list on an M x N grid.

    Taps occupy delays 0..delay_span-1 and Dopplers within
    +-doppler_span/2 (doppler_span is even).  At most one tap per
    (delay, doppler) pair; coinciding physical paths are summed at
    generation time.
    """

    M: int
    N: int
    delay_span: int
    doppler_span: int
    taps: tuple[PathTap, ...]

    def __post_init__(self) -> None:
        if self.delay_span > self.M * self.N:
            raise ValueError("delay span exceeds frame length")
        if self.doppler_span % 2:
            raise ValueError("doppler_span must be even")
        seen = set()
        for tap in self.taps:
            if not 0 <= tap.delay < self.delay_span:
                raise ValueError(f"delay {tap.delay} outside 0..{self.delay_span - 1}")
            if abs(tap.doppler) > self.doppler_span // 2:
                raise ValueError(f"doppler {tap.doppler} outside +-{self.doppler_span // 2}")
            if (tap.delay, tap.doppler) in seen:
                raise ValueError(f"duplicate tap at ({tap.delay}, {tap.doppler})")
            seen.add((tap.delay, tap.doppler))

    @property
    def num_taps(self) -> int:
        return len(self.taps)


@dataclass(frozen=True)
class ChannelProfile:
    """Physical path description feeding the channel generator.

    Per-path average powers are stored in dB and normalized so the linear
    powers sum to one, keeping E[channel energy] = 1.
    """

    delays_s: tuple[float, ...]
    powers_db: tuple[float, ...]
    carrier_hz: float
    speed_mps: float
    delta_f_hz: float
    M: int
    N: int

    def __post_init__(self) -> None:
        if len(self.delays_s) != len(self.powers_db):
            raise ValueError("delay and power lists must have equal length")
        if not self.delays_s:
            raise ValueError("profile needs at least one path")

    @property
    def powers_linear(self) -> np.ndarray:
        p = 10.0 ** (np.asarray(self.powers_db) / 10.0)
        return p / p.sum()


@dataclass(frozen=True)
class CsiError:
    """Relative radius of the bounded perturbations applied to a known channel."""

    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")


def eva_profile(M: int, N: int, delta_f_hz: float, carrier_hz: float, speed_mps: float) -> ChannelProfile:
    """The built-in EVA profile bound to a grid and mobility setting."""
    return ChannelProfile(
        delays_s=tuple(d * 1e-9 for d in EVA_DELAYS_NS),
        powers_db=EVA_POWERS_DB,
        carrier_hz=carrier_hz,
        speed_mps=speed_mps,
        delta_f_hz=delta_f_hz,
        M=M,
        N=N,
    )


def single_path_profile(M: int, N: int, delta_f_hz: float, carrier_hz: float, speed_mps: float) -> ChannelProfile:
    """A one-path profile (delay 0, full power); useful as an identity-like channel."""
    return ChannelProfile(
        delays_s=(0.0,),
        powers_db=(0.0,),
        carrier_hz=carrier_hz,
        speed_mps=speed_mps,
        delta_f_hz=delta_f_hz,
        M=M,
        N=N,
    )


def quantize_delay(tau_s: float, M: int, delta_f_hz: float, N: int | None = None) -> int:
    """Quantize a physical delay onto the grid: l = round(tau * M * delta_f).

    The delay resolution is 1/(M*delta_f).  When N is given, delays at or
    beyond the MN-sample frame are rejected as unsupportable.
    """
    if tau_s < 0:
        raise ValueError("delay must be >= 0")
    l = int(round(tau_s * M * delta_f_hz))
    if N is not None and l >= M * N:
        raise UnsupportableDelayError(
            f"delay {tau_s} s quantizes to bin {l}, beyond the {M * N}-sample frame"
        )
    return l


def _max_doppler_hz(speed_mps: float, carrier_hz: float) -> float:
    return speed_mps * carrier_hz / LIGHT_SPEED_MPS


def jakes_doppler(speed_mps: float, carrier_hz: float, N: int, delta_f_hz: float, rng: np.random.Generator) -> int:
    """Draw one integer Doppler index from the Jakes distribution.

    The path's Doppler shift is nu_max * cos(theta) with theta uniform on
    [-pi, pi] and nu_max = speed * carrier / c.  The index is the shift
    quantized to the grid's Doppler resolution 1/(N*T), T = 1/delta_f.
    """
    if speed_mps < 0:
        raise ValueError("speed must be >= 0")
    nu_max = _max_doppler_hz(speed_mps, carrier_hz)
    theta = rng.uniform(-np.pi, np.pi)
    nu = nu_max * np.cos(theta)
    return int(round(nu * N / delta_f_hz))


def profile_spans(profile: ChannelProfile) -> tuple[int, int]:
    """Deterministic (delay_span, doppler_span) implied by a profile.

    delay_span covers the largest quantized path delay; doppler_span covers
    the largest Doppler index the mobility can produce (theta = 0).  Both are
    fixed by the profile alone, so every random draw fits the same spans.
    """
    delays = [quantize_delay(t, profile.M, profile.delta_f_hz, profile.N) for t in profile.delays_s]
    delay_span = max(delays) + 1
    nu_max = _max_doppler_hz(profile.speed_mps, profile.carrier_hz)
    k_max = int(round(nu_max * profile.N / profile.delta_f_hz))
    return delay_span, 2 * k_max


def gen_channel(
    profile: ChannelProfile,
    rng: np.random.Generator,
    common_doppler: int | None = None,
) -> DDChannel:
    """Draw one channel realization from a profile.

    Each path lands at its quantized delay with a Jakes-drawn Doppler index
    and a circular complex Gaussian gain of variance equal to its profile
    power (Rayleigh magnitudes).  Paths that quantize to the same
    (delay, doppler) cell are summed.  When ``common_doppler`` is given, every
    path takes that Doppler index instead of an independent draw.
    """
    delay_span, doppler_span = profile_spans(profile)
    powers = profile.powers_linear
    merged: dict[tuple[int, int], complex] = {}
    for tau, p in zip(profile.delays_s, powers):
        l = quantize_delay(tau, profile.M, profile.delta_f_hz)
        if common_doppler is None:
            k = jakes_doppler(profile.speed_mps, profile.carrier_hz, profile.N, profile.delta_f_hz, rng)
        else:
            k = common_doppler
        scale = np.sqrt(p / 2.0)
        gain = complex(rng.normal(0.0, scale), rng.normal(0.0, scale))
        merged[(l, k)] = merged.get((l, k), 0j) + gain
    taps = tuple(PathTap(l, k, g) for (l, k), g in sorted(merged.items()))
    return DDChannel(M=profile.M, N=profile.N, delay_span=delay_span, doppler_span=doppler_span, taps=taps)


def _uniform_disk(rng: np.random.Generator, radius: float) -> complex:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0))
    phi = rng.uniform(0.0, 2.0 * np.pi)
    return complex(r * np.cos(phi), r * np.sin(phi))


def perturb_csi(truth: DDChannel, err: CsiError, rng: np.random.Generator) -> DDChannel:
    """The receiver's imperfect copy of a channel.

    Per tap: the gain moves within a complex disk of radius eps*|gain|; delay
    and Doppler indices move within +-eps*|index| before re-rounding to the
    grid and clamping to the channel's spans.  Estimate-side taps that land
    on the same cell are summed.  eps = 0 returns the truth unchanged.
    """
    eps = err.epsilon
    half_span = truth.doppler_span // 2
    merged: dict[tuple[int, int], complex] = {}
    for tap in truth.taps:
        gain = tap.gain + _uniform_disk(rng, eps * abs(tap.gain))
        delay = int(round(tap.delay + rng.uniform(-1.0, 1.0) * eps * tap.delay))
        doppler = int(round(tap.doppler + rng.uniform(-1.0, 1.0) * eps * abs(tap.doppler)))
        delay = min(max(delay, 0), truth.delay_span - 1)
        doppler = min(max(doppler, -half_span), half_span)
        merged[(delay, doppler)] = merged.get((delay, doppler), 0j) + gain
    taps = tuple(PathTap(l, k, g) for (l, k), g in sorted(merged.items()))
    return replace(truth, taps=taps)


def frobenius_norm(h: DDChannel) -> float:
    """Square root of the channel's total tap energy."""
    return float(np.sqrt(sum(abs(t.gain) ** 2 for t in h.taps)))
