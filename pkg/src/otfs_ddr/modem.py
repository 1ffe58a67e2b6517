"""OTFS modulation chain.

Gray-labeled PSK mapping, the ISFFT/SFFT pair between the delay-Doppler and
time-frequency grids, Heisenberg/Wigner transforms between time-frequency and
time samples (rectangular pulses), column-major (de)vectorization, and cyclic
prefix handling.  All DFT factors are unitary, so every step preserves energy
and the chain inverts exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Domain",
    "Grid",
    "TimeSignal",
    "Constellation",
    "make_constellation",
    "modulate_bits",
    "demap_symbols",
    "symbols_to_grid",
    "grid_to_symbols",
    "isfft",
    "sfft",
    "heisenberg",
    "wigner",
    "vectorize",
    "devectorize",
    "add_cp",
    "remove_cp",
]


class Domain(enum.Enum):
    """Which signal plane a grid lives on."""

    DD = "delay-doppler"
    TF = "time-frequency"
    TIME = "time"


@dataclass(frozen=True)
class Grid:
    """An M x N complex matrix tagged with the plane it belongs to.

    Rows index delay bins (DD) or subcarriers (TF); columns index Doppler
    bins (DD) or block symbols (TF/TIME).  Dimensions are fixed across the
    whole transform chain.
    """

    data: np.ndarray
    domain: Domain

    def __post_init__(self) -> None:
        if self.data.ndim != 2:
            raise ValueError(f"grid data must be 2-D, got shape {self.data.shape}")

    @property
    def M(self) -> int:
        return self.data.shape[0]

    @property
    def N(self) -> int:
        return self.data.shape[1]


@dataclass(frozen=True)
class TimeSignal:
    """Serialized frame samples, optionally carrying a cyclic prefix."""

    samples: np.ndarray
    cp_len: int = 0

    def __post_init__(self) -> None:
        if self.samples.ndim != 1:
            raise ValueError("time signal must be 1-D")
        if not 0 <= self.cp_len <= self.samples.size:
            raise ValueError(f"inconsistent cp_len {self.cp_len} for {self.samples.size} samples")


# ---------------------------------------------------------------------------
# Constellations
# ---------------------------------------------------------------------------

_PSK_ORDERS = {"bpsk": 1, "qpsk": 2, "8psk": 3}

# Rotation placing the conventional unit-energy points: BPSK on the real axis,
# QPSK on the diagonals (bits 00 -> (1+j)/sqrt(2)), 8PSK offset by pi/8.
_PSK_PHASE0 = {"bpsk": 0.0, "qpsk": np.pi / 4, "8psk": np.pi / 8}


@dataclass(frozen=True)
class Constellation:
    """Unit-power PSK alphabet with Gray labeling.

    ``points`` is indexed by the integer bit label, so ``points[b]`` is the
    symbol transmitted for bit group ``b`` (MSB first).  Adjacent points on
    the circle differ in exactly one bit.
    """

    name: str
    points: np.ndarray
    bits_per_symbol: int


def make_constellation(name: str) -> Constellation:
    """Build one of the supported PSK alphabets: bpsk, qpsk, 8psk."""
    key = name.lower()
    if key not in _PSK_ORDERS:
        raise ValueError(f"unknown constellation {name!r}; expected one of {sorted(_PSK_ORDERS)}")
    bps = _PSK_ORDERS[key]
    order = 1 << bps
    position = np.arange(order)
    labels = position ^ (position >> 1)  # Gray label carried by circle position i
    points = np.empty(order, dtype=complex)
    points[labels] = np.exp(1j * (_PSK_PHASE0[key] + 2.0 * np.pi * position / order))
    return Constellation(name=key, points=points, bits_per_symbol=bps)


def modulate_bits(bits: np.ndarray, c: Constellation) -> np.ndarray:
    """Map a bit sequence onto constellation symbols, MSB-first per group."""
    bits = np.asarray(bits)
    if bits.size % c.bits_per_symbol:
        raise ValueError(
            f"bit count {bits.size} not divisible by {c.bits_per_symbol} ({c.name})"
        )
    groups = bits.reshape(-1, c.bits_per_symbol).astype(np.int64)
    weights = 1 << np.arange(c.bits_per_symbol - 1, -1, -1)
    return c.points[groups @ weights]


def demap_symbols(symbols: np.ndarray, c: Constellation) -> np.ndarray:
    """Hard-decision slicing to the nearest point; ties go to the lowest label."""
    symbols = np.asarray(symbols, dtype=complex).ravel()
    # argmin returns the first minimum, which is the lowest bit label by layout.
    labels = np.argmin(np.abs(symbols[:, None] - c.points[None, :]), axis=1)
    shifts = np.arange(c.bits_per_symbol - 1, -1, -1)
    return ((labels[:, None] >> shifts) & 1).astype(np.uint8).ravel()


# ---------------------------------------------------------------------------
# Grid packing
# ---------------------------------------------------------------------------


def symbols_to_grid(symbols: np.ndarray, M: int, N: int) -> Grid:
    """Pack M*N symbols onto the delay-Doppler grid, column-major."""
    symbols = np.asarray(symbols, dtype=complex)
    if symbols.size != M * N:
        raise ValueError(f"expected {M * N} symbols, got {symbols.size}")
    return Grid(symbols.reshape((M, N), order="F"), Domain.DD)


def grid_to_symbols(grid: Grid) -> np.ndarray:
    """Inverse of symbols_to_grid."""
    return grid.data.flatten(order="F")


# ---------------------------------------------------------------------------
# Transform chain
# ---------------------------------------------------------------------------


def _require(grid: Grid, domain: Domain, op: str) -> None:
    if grid.domain is not domain:
        raise ValueError(f"{op} expects a {domain.value} grid, got {grid.domain.value}")


def isfft(x_dd: Grid) -> Grid:
    """Inverse symplectic finite Fourier transform: DD grid -> TF grid.

    Unitary M-point DFT along delay and unitary N-point IDFT along Doppler.
    """
    _require(x_dd, Domain.DD, "isfft")
    x_tf = np.fft.ifft(np.fft.fft(x_dd.data, axis=0, norm="ortho"), axis=1, norm="ortho")
    return Grid(x_tf, Domain.TF)


def sfft(y_tf: Grid) -> Grid:
    """Symplectic finite Fourier transform: TF grid -> DD grid.  Exact inverse of isfft."""
    _require(y_tf, Domain.TF, "sfft")
    y_dd = np.fft.fft(np.fft.ifft(y_tf.data, axis=0, norm="ortho"), axis=1, norm="ortho")
    return Grid(y_dd, Domain.DD)


def heisenberg(x_tf: Grid) -> Grid:
    """TF grid -> time-sample blocks (one column per block), rectangular pulse."""
    _require(x_tf, Domain.TF, "heisenberg")
    return Grid(np.fft.ifft(x_tf.data, axis=0, norm="ortho"), Domain.TIME)


def wigner(y_t: Grid) -> Grid:
    """Time-sample blocks -> TF grid.  Exact inverse of heisenberg."""
    _require(y_t, Domain.TIME, "wigner")
    return Grid(np.fft.fft(y_t.data, axis=0, norm="ortho"), Domain.TF)


def vectorize(g: Grid) -> TimeSignal:
    """Serialize time-domain blocks column by column into one frame."""
    _require(g, Domain.TIME, "vectorize")
    return TimeSignal(g.data.flatten(order="F"), cp_len=0)


def devectorize(s: TimeSignal, M: int, N: int) -> Grid:
    """Reshape a CP-free frame back into M x N time-domain blocks."""
    if s.cp_len:
        raise ValueError("devectorize expects a CP-free signal; call remove_cp first")
    if s.samples.size != M * N:
        raise ValueError(f"expected {M * N} samples, got {s.samples.size}")
    return Grid(s.samples.reshape((M, N), order="F"), Domain.TIME)


def add_cp(s: TimeSignal, cp_len: int) -> TimeSignal:
    """Prepend the last cp_len samples of the frame as a cyclic prefix."""
    if cp_len < 0:
        raise ValueError("cp_len must be >= 0")
    if s.cp_len:
        raise ValueError("signal already carries a cyclic prefix")
    if cp_len > s.samples.size:
        raise ValueError(f"cp_len {cp_len} exceeds frame length {s.samples.size}")
    if cp_len == 0:
        return TimeSignal(s.samples.copy(), cp_len=0)
    return TimeSignal(np.concatenate([s.samples[-cp_len:], s.samples]), cp_len=cp_len)


def remove_cp(s: TimeSignal) -> TimeSignal:
    """Drop the cyclic prefix, leaving the MN-sample frame."""
    return TimeSignal(s.samples[s.cp_len:], cp_len=0)
