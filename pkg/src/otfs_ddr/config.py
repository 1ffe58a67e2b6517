"""Simulation configuration: dataclass, flat key=value file format, validation.

The file format is one ``key = value`` pair per line, ``#`` comments, keys
matching SimConfig field names exactly.  Unknown keys are errors, so typos
fail loudly instead of silently running the wrong experiment.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .channel import ChannelProfile

__all__ = ["ConfigError", "SimConfig", "parse_snr_spec", "load_config", "make_profile"]

_MODULATIONS = ("bpsk", "qpsk", "8psk")
_RECEIVERS = ("ddr", "dp", "tr")
_PROFILES = ("eva", "single", "custom")


class ConfigError(ValueError):
    """Bad configuration file or option value."""


@dataclass(frozen=True)
class SimConfig:
    """Everything one BER experiment depends on, seed included."""

    m: int = 64
    n: int = 16
    delta_f_hz: float = 15_000.0
    carrier_hz: float = 4e9
    speed_kmph: float = 120.0
    modulation: str = "qpsk"
    num_antennas: int = 1
    profile: str = "eva"
    profile_delays_ns: tuple[float, ...] = ()
    profile_powers_db: tuple[float, ...] = ()
    receivers: tuple[str, ...] = ("ddr", "dp", "tr")
    snr_db: tuple[float, ...] = (0.0, 5.0, 10.0, 15.0)
    max_frames: int = 200
    target_bit_errors: int = 500
    csi_epsilon: float = 0.0
    common_doppler: bool = False
    seed: int = 0


def _parse_bool(raw: str, key: str) -> bool:
    low = raw.lower()
    if low in ("true", "false"):
        return low == "true"
    raise ConfigError(f"{key}: expected true or false, got {raw!r}")


def _parse_float_list(raw: str, key: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def parse_snr_spec(raw: str) -> tuple[float, ...]:
    """Accept either a comma list ``0,5,10`` or an inclusive range ``0:10:5``."""
    raw = raw.strip()
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError(f"snr range must be start:stop:step, got {raw!r}")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError as exc:
            raise ConfigError(f"snr range: {exc}") from None
        if step <= 0:
            raise ConfigError("snr range step must be > 0")
        out = []
        value = start
        while value <= stop + 1e-9:
            out.append(round(value, 10))
            value += step
        if not out:
            raise ConfigError(f"snr range {raw!r} is empty")
        return tuple(out)
    values = _parse_float_list(raw, "snr_db")
    if not values:
        raise ConfigError("snr list is empty")
    return values


def _convert(key: str, raw: str) -> object:
    if key in ("m", "n", "num_antennas", "max_frames", "target_bit_errors", "seed"):
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected integer, got {raw!r}") from None
    if key in ("delta_f_hz", "carrier_hz", "speed_kmph", "csi_epsilon"):
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected number, got {raw!r}") from None
    if key == "common_doppler":
        return _parse_bool(raw, key)
    if key in ("profile_delays_ns", "profile_powers_db"):
        return _parse_float_list(raw, key)
    if key == "snr_db":
        return parse_snr_spec(raw)
    if key == "receivers":
        return tuple(tok.strip().lower() for tok in raw.split(",") if tok.strip())
    if key in ("modulation", "profile"):
        return raw.strip().lower()
    raise ConfigError(f"unknown key {key!r}")


def validate(cfg: SimConfig) -> SimConfig:
    if cfg.m < 1 or cfg.n < 1:
        raise ConfigError("m and n must be >= 1")
    if cfg.modulation not in _MODULATIONS:
        raise ConfigError(f"modulation must be one of {_MODULATIONS}, got {cfg.modulation!r}")
    if cfg.num_antennas < 1:
        raise ConfigError("num_antennas must be >= 1")
    if cfg.profile not in _PROFILES:
        raise ConfigError(f"profile must be one of {_PROFILES}, got {cfg.profile!r}")
    if cfg.profile == "custom":
        if not cfg.profile_delays_ns or not cfg.profile_powers_db:
            raise ConfigError("custom profile needs profile_delays_ns and profile_powers_db")
        if len(cfg.profile_delays_ns) != len(cfg.profile_powers_db):
            raise ConfigError("profile delay and power lists must have equal length")
    if not cfg.receivers:
        raise ConfigError("at least one receiver required")
    for r in cfg.receivers:
        if r not in _RECEIVERS:
            raise ConfigError(f"unknown receiver {r!r}; expected subset of {_RECEIVERS}")
    if len(set(cfg.receivers)) != len(cfg.receivers):
        raise ConfigError("duplicate receiver names")
    if not cfg.snr_db:
        raise ConfigError("snr_db must be non-empty")
    if cfg.max_frames < 1 or cfg.target_bit_errors < 1:
        raise ConfigError("max_frames and target_bit_errors must be >= 1")
    if cfg.csi_epsilon < 0:
        raise ConfigError("csi_epsilon must be >= 0")
    if cfg.speed_kmph < 0:
        raise ConfigError("speed_kmph must be >= 0")
    if cfg.delta_f_hz <= 0 or cfg.carrier_hz <= 0:
        raise ConfigError("delta_f_hz and carrier_hz must be > 0")
    if cfg.seed < 0:
        raise ConfigError("seed must be a non-negative integer")
    return cfg


def parse_config_text(text: str) -> SimConfig:
    known = {f.name for f in fields(SimConfig)}
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.partition("#")[0].strip()  # values never contain '#'
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip().lower()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _convert(key, raw.strip())
    return validate(SimConfig(**values))


def load_config(path: str | Path) -> SimConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config_text(text)


def override(cfg: SimConfig, **changes: object) -> SimConfig:
    """Apply CLI-style overrides, re-validating the result."""
    present = {k: v for k, v in changes.items() if v is not None}
    return validate(replace(cfg, **present))


def make_profile(cfg: SimConfig) -> ChannelProfile:
    """Instantiate the channel profile a config names."""
    speed_mps = cfg.speed_kmph / 3.6
    if cfg.profile == "eva":
        from .channel import eva_profile

        return eva_profile(cfg.m, cfg.n, cfg.delta_f_hz, cfg.carrier_hz, speed_mps)
    if cfg.profile == "single":
        from .channel import single_path_profile

        return single_path_profile(cfg.m, cfg.n, cfg.delta_f_hz, cfg.carrier_hz, speed_mps)
    return ChannelProfile(
        delays_s=tuple(d * 1e-9 for d in cfg.profile_delays_ns),
        powers_db=cfg.profile_powers_db,
        carrier_hz=cfg.carrier_hz,
        speed_mps=speed_mps,
        delta_f_hz=cfg.delta_f_hz,
        M=cfg.m,
        N=cfg.n,
    )
