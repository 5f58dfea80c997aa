"""Frequency-selective channel realizations for the energy and data links.

Each link is an exponential power-delay profile with complex Gaussian
(Rayleigh) taps, sampled at the inverse total bandwidth and normalized so
the expected per-sub-channel power gain equals the link pathloss. Slots are
drawn independently; the two links are independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig

# Philox stream ids so the two links (and baseline arrival draws elsewhere)
# never share random numbers for one seed.
STREAM_WET = 0
STREAM_WIT = 1

# Strict-positivity floor for power gains; complex Gaussian draws hit exact
# zero with probability zero but the contract demands it.
GAIN_FLOOR = 1e-30


@dataclass(frozen=True)
class ChannelBlock:
    """Per-slot, per-sub-channel linear power gains for both links."""

    h: np.ndarray  # (K, N) energy link, EAP -> user
    g: np.ndarray  # (K, N) data link, user -> DAP
    seed: int

    def __post_init__(self) -> None:
        for name in ("h", "g"):
            m = getattr(self, name)
            if m.ndim != 2:
                raise ValueError(f"{name} must be a K x N matrix")
            if not np.all(np.isfinite(m)) or np.any(m <= 0):
                raise ValueError(f"{name} must be strictly positive and finite")
        if self.h.shape != self.g.shape:
            raise ValueError("h and g must have matching dimensions")


def pathloss_linear(distance_m: float, exponent: float = 3.0) -> float:
    """Linear power attenuation at the given distance in meters.

    Uses the -31.5 - 10*exponent*log10(d) dB model (exponent 3 by default).
    """
    if distance_m <= 0:
        raise ValueError(f"distance must be positive, got {distance_m}")
    return 10.0 ** ((-31.5 - 10.0 * exponent * math.log10(distance_m)) / 10.0)


def tap_variances(config: SystemConfig) -> np.ndarray:
    """Unit-sum tap variances of the exponential power-delay profile.

    Tap spacing is 1 / (N * sc_bandwidth), i.e. the inverse total bandwidth.
    """
    spacing = 1.0 / (config.num_subchannels * config.sc_bandwidth)
    weights = np.exp(-np.arange(config.num_taps) * spacing / config.rms_delay_spread)
    return weights / weights.sum()


def _link_gains(config: SystemConfig, seed: int, stream: int,
                distance_m: float) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, stream]))
    K, N, taps = config.num_slots, config.num_subchannels, config.num_taps
    variances = tap_variances(config) * pathloss_linear(distance_m,
                                                        config.pathloss_exponent)
    scale = np.sqrt(variances / 2.0)
    c = (rng.standard_normal((K, taps)) + 1j * rng.standard_normal((K, taps))) * scale
    # Frequency response sampled at the N sub-channel centers. An explicit
    # DFT matrix keeps tap counts larger than N correct (np.fft would crop).
    ell = np.arange(taps)[:, None]
    n = np.arange(N)[None, :]
    dft = np.exp(-2j * np.pi * ell * n / N)
    freq = c @ dft
    return np.maximum(np.abs(freq) ** 2, GAIN_FLOOR)


def generate_channel(config: SystemConfig, seed: int) -> ChannelBlock:
    """Draw one block of channel gains; deterministic given (config, seed)."""
    h = _link_gains(config, seed, STREAM_WET, config.dist_eap_user)
    g = _link_gains(config, seed, STREAM_WIT, config.dist_user_dap)
    return ChannelBlock(h=h, g=g, seed=seed)
