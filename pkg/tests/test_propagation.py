import numpy as np
import pytest
from helpers import dense_time_matrix, random_sparse_channel

from otfs_ddr import (
    AntennaBank,
    DDChannel,
    NoiseModel,
    PathTap,
    TimeSignal,
    add_awgn,
    cascade,
    transmit,
    twisted_apply,
)


def _sig(rng, n):
    return TimeSignal(rng.normal(size=n) + 1j * rng.normal(size=n))


# --- twisted_apply -----------------------------------------------------------


def test_identity_tap():
    rng = np.random.default_rng(0)
    x = _sig(rng, 32)
    h = DDChannel(M=8, N=4, delay_span=1, doppler_span=0, taps=(PathTap(0, 0, 1.0 + 0j),))
    assert np.array_equal(twisted_apply(x, h).samples, x.samples)


def test_pure_cyclic_delay():
    h = DDChannel(M=2, N=2, delay_span=3, doppler_span=0, taps=(PathTap(2, 0, 1.0 + 0j),))
    x = TimeSignal(np.array([1, 2, 3, 4], dtype=complex))
    assert list(twisted_apply(x, h).samples) == [3, 4, 1, 2]


def test_pure_doppler_ramp():
    rng = np.random.default_rng(1)
    x = _sig(rng, 16)
    h = DDChannel(M=4, N=4, delay_span=1, doppler_span=2, taps=(PathTap(0, 1, 1.0 + 0j),))
    expected = x.samples * np.exp(2j * np.pi * np.arange(16) / 16)
    assert np.allclose(twisted_apply(x, h).samples, expected, atol=1e-12)


def test_matches_dense_matrix():
    rng = np.random.default_rng(2)
    for _ in range(25):
        h = random_sparse_channel(rng, 8, 4, 4, 6, 5)
        x = _sig(rng, 32)
        assert np.max(np.abs(twisted_apply(x, h).samples - dense_time_matrix(h) @ x.samples)) <= 1e-10


def test_linearity():
    rng = np.random.default_rng(3)
    h = random_sparse_channel(rng, 8, 4, 3, 4, 4)
    x1, x2 = _sig(rng, 32), _sig(rng, 32)
    a, b = 1.7 - 0.3j, -0.6 + 2.1j
    lhs = twisted_apply(TimeSignal(a * x1.samples + b * x2.samples), h).samples
    rhs = a * twisted_apply(x1, h).samples + b * twisted_apply(x2, h).samples
    assert np.max(np.abs(lhs - rhs)) <= 1e-10
    doubled = DDChannel(M=8, N=4, delay_span=h.delay_span, doppler_span=h.doppler_span,
                        taps=tuple(PathTap(t.delay, t.doppler, 2 * t.gain) for t in h.taps))
    assert np.allclose(twisted_apply(x1, doubled).samples, 2 * twisted_apply(x1, h).samples)


def test_single_unit_tap_preserves_energy():
    rng = np.random.default_rng(4)
    x = _sig(rng, 32)
    h = DDChannel(M=8, N=4, delay_span=4, doppler_span=4, taps=(PathTap(3, -2, 1.0 + 0j),))
    assert np.linalg.norm(twisted_apply(x, h).samples) == pytest.approx(
        np.linalg.norm(x.samples), rel=1e-12
    )


def test_rejects_wrong_length_and_cp():
    h = DDChannel(M=8, N=4, delay_span=1, doppler_span=0, taps=(PathTap(0, 0, 1.0 + 0j),))
    with pytest.raises(ValueError):
        twisted_apply(TimeSignal(np.zeros(31, dtype=complex)), h)
    with pytest.raises(ValueError):
        twisted_apply(TimeSignal(np.zeros(34, dtype=complex), cp_len=2), h)


def test_cascade_consistency_with_sequential_application():
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = random_sparse_channel(rng, 8, 4, 3, 4, 4)
        b = random_sparse_channel(rng, 8, 4, 4, 2, 3)
        x = _sig(rng, 32)
        seq = twisted_apply(twisted_apply(x, a), b).samples
        direct = twisted_apply(x, cascade(b, a)).samples
        assert np.max(np.abs(seq - direct)) <= 1e-10


def test_cp_equivalence_with_linear_convolution():
    # prefix the frame, run a *non-cyclic* tapped channel, strip the prefix:
    # identical to the cyclic model on the bare frame
    rng = np.random.default_rng(6)
    M, N = 8, 4
    MN = M * N
    for _ in range(10):
        h = random_sparse_channel(rng, M, N, 4, 4, 5)
        cp = h.delay_span - 1
        x = _sig(rng, MN)
        ext = np.concatenate([x.samples[MN - cp:], x.samples]) if cp else x.samples.copy()
        lin = np.zeros_like(ext)
        # linear (non-cyclic) tapped delay line; the ramp phase counts from the
        # start of the bare frame, matching the receiver's time reference
        for t in h.taps:
            for c in range(ext.size):
                if c - t.delay >= 0:
                    lin[c] += t.gain * ext[c - t.delay] * np.exp(
                        2j * np.pi * t.doppler * (c - cp - t.delay) / MN
                    )
        cyclic = twisted_apply(x, h).samples
        assert np.max(np.abs(lin[cp:] - cyclic)) <= 1e-10


# --- noise and fan-out -------------------------------------------------------


def test_awgn_statistics():
    rng = np.random.default_rng(7)
    n = 1_000_000
    y = TimeSignal(np.zeros(n, dtype=complex))
    out = add_awgn(y, NoiseModel(0.25), rng).samples
    assert np.mean(np.abs(out) ** 2) == pytest.approx(0.25, rel=0.01)
    assert abs(out.mean()) <= 3 * 0.5 / np.sqrt(n)


def test_awgn_vanishes_with_sigma():
    rng = np.random.default_rng(8)
    x = _sig(rng, 64)
    out = add_awgn(x, NoiseModel(1e-20), rng).samples
    assert np.max(np.abs(out - x.samples)) <= 1e-8


def test_transmit_single_antenna_matches_manual_path():
    rng = np.random.default_rng(9)
    h = random_sparse_channel(rng, 8, 4, 3, 2, 3)
    x = _sig(rng, 32)
    got = transmit(x, AntennaBank((h,)), NoiseModel(0.1), np.random.default_rng(123))
    want = add_awgn(twisted_apply(x, h), NoiseModel(0.1), np.random.default_rng(123))
    assert np.array_equal(got[0].samples, want.samples)


def test_transmit_identical_channels_near_zero_noise():
    rng = np.random.default_rng(10)
    h = random_sparse_channel(rng, 8, 4, 3, 2, 3)
    x = _sig(rng, 32)
    outs = transmit(x, AntennaBank((h, h)), NoiseModel(1e-20), rng)
    assert np.max(np.abs(outs[0].samples - outs[1].samples)) <= 1e-8


def test_noise_uncorrelated_across_antennas():
    rng = np.random.default_rng(11)
    M, N = 32, 32
    h = DDChannel(M=M, N=N, delay_span=1, doppler_span=0, taps=(PathTap(0, 0, 1.0 + 0j),))
    x = TimeSignal(np.zeros(M * N, dtype=complex))
    reps = 100
    acc = 0.0
    for _ in range(reps):
        a, b = transmit(x, AntennaBank((h, h)), NoiseModel(1.0), rng)
        acc += np.mean(a.samples * np.conj(b.samples))
    # cross-covariance of independent unit-variance noise: ~N(0, 1/sqrt(reps*MN))
    assert abs(acc / reps) <= 4 / np.sqrt(reps * M * N)


def test_bank_requires_matching_layout():
    h1 = DDChannel(M=8, N=4, delay_span=2, doppler_span=0, taps=(PathTap(0, 0, 1.0 + 0j),))
    h2 = DDChannel(M=8, N=4, delay_span=3, doppler_span=0, taps=(PathTap(0, 0, 1.0 + 0j),))
    with pytest.raises(ValueError):
        AntennaBank((h1, h2))
