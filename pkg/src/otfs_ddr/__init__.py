"""OTFS link simulation with a delay-Doppler reversal receiver.

The package covers the full chain: Gray-PSK OTFS modulation, sparse
delay-Doppler channels drawn from delay-power profiles with Jakes Doppler,
cyclic twisted-convolution propagation, the DDR matched-filter receiver with
its two baselines (dominant-tap direct processing and classic 1-D time
reversal), closed-form SINR analysis, and a deterministic Monte-Carlo BER
harness with a CLI.
"""

from .baselines import (
    DominantTap,
    TrFilter,
    build_tr_filter,
    dp_detect,
    dp_equalize,
    find_dominant_tap,
    tr_detect,
    tr_equalize,
)
from .channel import (
    EVA_DELAYS_NS,
    EVA_POWERS_DB,
    LIGHT_SPEED_MPS,
    ChannelProfile,
    CsiError,
    DDChannel,
    DegenerateChannelError,
    PathTap,
    UnsupportableDelayError,
    eva_profile,
    frobenius_norm,
    gen_channel,
    jakes_doppler,
    perturb_csi,
    profile_spans,
    quantize_delay,
    single_path_profile,
)
from .config import ConfigError, SimConfig, load_config, make_profile, parse_snr_spec
from .ddr import (
    DdrFilter,
    OpCounter,
    build_ddr_filter,
    cascade,
    ddr_detect,
    ddr_equalize,
    ddr_filter_signal,
    peak_gain,
)
from .harness import (
    BerRecord,
    ReceiverTrial,
    emit_csv,
    run_sweep,
    run_trial,
    snr_to_sigma2,
    trial_rng,
)
from .modem import (
    Constellation,
    Domain,
    Grid,
    TimeSignal,
    add_cp,
    demap_symbols,
    devectorize,
    grid_to_symbols,
    heisenberg,
    isfft,
    make_constellation,
    modulate_bits,
    remove_cp,
    sfft,
    symbols_to_grid,
    vectorize,
    wigner,
)
from .propagation import AntennaBank, NoiseModel, add_awgn, transmit, twisted_apply
from .sinr import SinrReport, sinr_ddr, sinr_dp, sinr_gain

__version__ = "0.1.0"
