"""System parameters and config-file loading.

All dB / dBm / mW quantities are converted to linear SI units here, at the
boundary. Everything downstream works in watts, joules and linear gains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import yaml

# Slot duration is fixed at 1 s, so per-slot energies and powers coincide
# numerically throughout the package.
SLOT_DURATION = 1.0


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    if value <= 0:
        raise ValueError("only positive quantities have a dB representation")
    return 10.0 * math.log10(value)


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** (value_dbm / 10.0) * 1e-3


def mw_to_watts(value_mw: float) -> float:
    return value_mw * 1e-3


def noise_per_sc_watts(density_dbm_per_hz: float, sc_bandwidth_hz: float) -> float:
    """Integrated noise power over one sub-channel, in watts."""
    if sc_bandwidth_hz <= 0:
        raise ValueError(f"sc_bandwidth_hz must be positive, got {sc_bandwidth_hz}")
    return dbm_to_watts(density_dbm_per_hz + 10.0 * math.log10(sc_bandwidth_hz))


@dataclass(frozen=True)
class SystemConfig:
    """Scalar system parameters.

    `snr_gap` and `noise_per_sc` are stored linear (W); use `from_mapping`
    / `load_config` to build from the human-readable dB/mW schema.
    """

    num_slots: int = 61
    num_subchannels: int = 16
    eap_avg_power: float = 60e-3        # W, block-average transmit power budget
    initial_battery: float = 0.0        # J
    efficiency: float = 0.2             # harvesting efficiency, in (0, 1]
    snr_gap: float = 7.943282347242816  # linear, 9 dB
    noise_per_sc: float = 1.592428682213988e-14  # W (-174 dBm/Hz over 4 MHz)
    sc_bandwidth: float = 4e6           # Hz
    carrier_freq: float = 900e6         # Hz
    dist_eap_user: float = 3.0          # m
    dist_user_dap: float = 7.0          # m
    pathloss_exponent: float = 3.0
    rms_delay_spread: float = 0.02e-6   # s
    num_taps: int = 8

    def __post_init__(self) -> None:
        if self.num_slots < 2:
            raise ValueError("num_slots must be at least 2")
        if self.num_subchannels < 1:
            raise ValueError("num_subchannels must be at least 1")
        if self.eap_avg_power < 0:
            raise ValueError("eap_avg_power must be nonnegative")
        if self.initial_battery < 0:
            raise ValueError("initial_battery must be nonnegative")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in (0, 1]")
        if self.snr_gap < 1.0:
            raise ValueError("snr_gap must be >= 1 (linear)")
        if self.noise_per_sc <= 0:
            raise ValueError("noise_per_sc must be positive")
        for name in ("sc_bandwidth", "carrier_freq", "dist_eap_user",
                     "dist_user_dap", "pathloss_exponent", "rms_delay_spread"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.num_taps < 1:
            raise ValueError("num_taps must be at least 1")

    @property
    def effective_noise(self) -> float:
        """Gap-scaled noise power per sub-channel (W)."""
        return self.snr_gap * self.noise_per_sc


# Keys of the YAML config schema, all required to be numeric if present.
_SCHEMA_KEYS = (
    "num_slots", "num_subchannels", "eap_avg_power_mw", "initial_battery_j",
    "efficiency", "snr_gap_db", "noise_density_dbm_per_hz", "sc_bandwidth_hz",
    "carrier_freq_hz", "dist_eap_user_m", "dist_user_dap_m",
    "pathloss_exponent", "rms_delay_spread_s", "num_taps",
)

_DEFAULT_MAPPING = {
    "num_slots": 61,
    "num_subchannels": 16,
    "eap_avg_power_mw": 60.0,
    "initial_battery_j": 0.0,
    "efficiency": 0.2,
    "snr_gap_db": 9.0,
    "noise_density_dbm_per_hz": -174.0,
    "sc_bandwidth_hz": 4e6,
    "carrier_freq_hz": 900e6,
    "dist_eap_user_m": 3.0,
    "dist_user_dap_m": 7.0,
    "pathloss_exponent": 3.0,
    "rms_delay_spread_s": 0.02e-6,
    "num_taps": 8,
}


def from_mapping(mapping: dict) -> SystemConfig:
    """Build a SystemConfig from the human-readable key-value schema.

    Unknown keys are rejected so typos do not silently fall back to defaults.
    """
    unknown = set(mapping) - set(_SCHEMA_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(_DEFAULT_MAPPING)
    merged.update(mapping)
    return SystemConfig(
        num_slots=int(merged["num_slots"]),
        num_subchannels=int(merged["num_subchannels"]),
        eap_avg_power=mw_to_watts(float(merged["eap_avg_power_mw"])),
        initial_battery=float(merged["initial_battery_j"]),
        efficiency=float(merged["efficiency"]),
        snr_gap=db_to_linear(float(merged["snr_gap_db"])),
        noise_per_sc=noise_per_sc_watts(
            float(merged["noise_density_dbm_per_hz"]),
            float(merged["sc_bandwidth_hz"]),
        ),
        sc_bandwidth=float(merged["sc_bandwidth_hz"]),
        carrier_freq=float(merged["carrier_freq_hz"]),
        dist_eap_user=float(merged["dist_eap_user_m"]),
        dist_user_dap=float(merged["dist_user_dap_m"]),
        pathloss_exponent=float(merged["pathloss_exponent"]),
        rms_delay_spread=float(merged["rms_delay_spread_s"]),
        num_taps=int(merged["num_taps"]),
    )


def load_config(path: str | Path) -> SystemConfig:
    """Read a YAML config file (see README for the schema)."""
    raw = yaml.safe_load(Path(path).read_text())
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path} must contain a key-value mapping")
    return from_mapping(raw)
