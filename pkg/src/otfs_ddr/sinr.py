"""Closed-form per-realization SINR for the DDR and DP receivers.

All powers are post-receiver: the desired power is the squared central-peak
gain (DDR) or squared dominant-tap gain (DP) times the symbol power, the
interference power sums the residual taps, and filtered noise keeps variance
sigma2 thanks to the receivers' unit-energy normalizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .baselines import find_dominant_tap
from .channel import DDChannel, DegenerateChannelError
from .ddr import build_ddr_filter, cascade

__all__ = ["SinrReport", "sinr_ddr", "sinr_dp", "sinr_gain"]


@dataclass(frozen=True)
class SinrReport:
    """Both receivers' power budgets on one channel realization."""

    p_sig_ddr: float
    p_int_ddr: float
    sinr_ddr: float
    p_sig_dp: float
    p_int_dp: float
    sinr_dp: float
    gain: float
    sig_ratio: float
    p_symbol: float
    sigma2: float


def _check(P: float, sigma2: float) -> None:
    if P <= 0:
        raise ValueError("symbol power must be > 0")
    if sigma2 <= 0:
        raise ValueError("noise variance must be > 0")


def sinr_ddr(h: DDChannel | Sequence[DDChannel], P: float, sigma2: float) -> tuple[float, float, float]:
    """(desired power, interference power, SINR) after DDR filtering.

    The desired power is P times the channel's total tap energy.  The
    interference power sums every filter-channel cascade tap except the
    central peak; for a bank the per-antenna cascades add coherently tap by
    tap before squaring, matching the receiver's antenna sum.
    """
    _check(P, sigma2)
    channels = (h,) if isinstance(h, DDChannel) else tuple(h)
    filt = build_ddr_filter(channels)
    merged: dict[tuple[int, int], complex] = {}
    for ch, g in zip(channels, filt.channels):
        for tap in cascade(g, ch).taps:
            key = (tap.delay, tap.doppler)
            merged[key] = merged.get(key, 0j) + tap.gain
    peak_key = (channels[0].delay_span - 1, 0)
    p_sig = P * filt.norm_used**2
    p_int = P * sum(abs(v) ** 2 for key, v in merged.items() if key != peak_key)
    return p_sig, p_int, p_sig / (p_int + sigma2)


def sinr_dp(h: DDChannel, P: float, sigma2: float) -> tuple[float, float, float]:
    """(desired power, interference power, SINR) for dominant-tap detection."""
    _check(P, sigma2)
    if not h.taps:
        raise DegenerateChannelError("empty channel")
    dom = find_dominant_tap(h)
    total = sum(abs(t.gain) ** 2 for t in h.taps)
    p_sig = P * abs(dom.gain) ** 2
    p_int = P * (total - abs(dom.gain) ** 2)
    return p_sig, p_int, p_sig / (p_int + sigma2)


def sinr_gain(h: DDChannel, P: float, sigma2: float) -> SinrReport:
    """Compare the two receivers on one realization.

    ``sig_ratio`` is the desired-power ratio (total tap energy over the
    dominant tap's energy), at least 1 with equality only for a single-tap
    channel.  ``gain`` is the full SINR ratio.
    """
    s_ddr = sinr_ddr(h, P, sigma2)
    s_dp = sinr_dp(h, P, sigma2)
    return SinrReport(
        p_sig_ddr=s_ddr[0],
        p_int_ddr=s_ddr[1],
        sinr_ddr=s_ddr[2],
        p_sig_dp=s_dp[0],
        p_int_dp=s_dp[1],
        sinr_dp=s_dp[2],
        gain=s_ddr[2] / s_dp[2],
        sig_ratio=s_ddr[0] / s_dp[0],
        p_symbol=P,
        sigma2=sigma2,
    )
