"""Shared defaults for the experiment scripts.

The reference vehicular scenario lives on a 512x128 grid at 15 kHz
subcarrier spacing. Shrinking the grid by 8x in both axes while widening
the spacing and the speed by the same factor preserves the channel's
delay-bin pattern and its relative Doppler spread, so the desk-sized
frames below exercise the same cell geometry at a fraction of the cost.
"""

from otfs_ddr import SimConfig

GRID_FACTOR = 8

DESK_SCALED = SimConfig(
    m=512 // GRID_FACTOR,
    n=128 // GRID_FACTOR,
    delta_f_hz=15e3 * GRID_FACTOR,
    carrier_hz=4e9,
    speed_kmph=300.0 * GRID_FACTOR,
    modulation="qpsk",
    profile="eva",
)


def parse_float_list(text):
    return [float(tok) for tok in text.split(",") if tok.strip()]
