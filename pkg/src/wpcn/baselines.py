"""Comparison systems: ambient random energy arrivals and constant-power
energy transfer. Both spend the arrivals with the causality-constrained
water-filling and are feasibility-checked on every run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelBlock
from .config import SystemConfig
from .offline import (PowerSchedule, ScAllocation, achievable_rate,
                      best_sc_per_slot, check_feasibility)
from .waterfill import staircase_waterfill

# Philox stream for the ambient transmitter's power draws (channel links use
# streams 0 and 1).
STREAM_ARRIVALS = 2


@dataclass(frozen=True)
class ArrivalProfile:
    """Energy credited at the end of each slot, usable from the next one."""

    arrivals: np.ndarray
    source: str  # random_ambient | constant_wet

    def availability(self, initial_battery: float) -> np.ndarray:
        """Start-of-slot energy injections: battery up front, then each
        slot's harvest shifted by one (the final slot's harvest is lost)."""
        avail = np.empty(self.arrivals.size)
        avail[0] = initial_battery
        avail[1:] = self.arrivals[:-1]
        return avail


def _spend(avail, per_slot_gains, config) -> np.ndarray:
    """Staircase water-filling of the availability over ragged per-slot
    sub-channel sets; returns a dense (K, N) power matrix."""
    K, N = config.num_slots, config.num_subchannels
    result = staircase_waterfill(avail, [gns for _, gns in per_slot_gains],
                                 config.effective_noise)
    p = np.zeros((K, N))
    for k, (cols, _) in enumerate(per_slot_gains):
        p[k, cols] = result.powers[k]
    return p


def random_arrival_run(channels: ChannelBlock, config: SystemConfig,
                       seed: int) -> float:
    """Ambient transmitter on sub-channel 1 with uniform random powers
    normalized to the average budget; data on the remaining N-1 sub-channels."""
    K, N = config.num_slots, config.num_subchannels
    if N < 2:
        raise ValueError("the ambient baseline needs at least one data sub-channel")
    rng = np.random.Generator(
        np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, STREAM_ARRIVALS]))
    u = rng.uniform(size=K)
    q = u * (K * config.eap_avg_power) / u.sum()
    profile = ArrivalProfile(
        arrivals=config.efficiency * channels.h[:, 0] * q, source="random_ambient")

    data_cols = np.arange(1, N)
    per_slot = [(data_cols, channels.g[k, 1:]) for k in range(K)]
    p = _spend(profile.availability(config.initial_battery), per_slot, config)

    pi = np.ones(K, dtype=int)
    pi[-1] = 0  # slot-K harvest is unusable either way
    alloc = ScAllocation(pi=pi)
    mask = np.ones((K, N), dtype=bool)
    mask[:, 0] = False
    schedule = PowerSchedule(q=q, p=p, rate=achievable_rate(p, channels.g, config))
    report = check_feasibility(schedule, channels, config, alloc, wit_mask=mask)
    if not report:
        raise RuntimeError(f"baseline schedule violated {report.constraint} "
                           f"at slot {report.slot}")
    return schedule.rate


def _constant_wet_rate(channels, config, pi) -> float:
    K, N = config.num_slots, config.num_subchannels
    q = np.full(K, K * config.eap_avg_power / (K - 1))
    q[-1] = 0.0
    rows = np.arange(K - 1)
    arrivals = np.zeros(K)
    arrivals[:-1] = config.efficiency * channels.h[rows, pi[:-1] - 1] * q[:-1]
    profile = ArrivalProfile(arrivals=arrivals, source="constant_wet")

    per_slot = []
    for k in range(K):
        cols = np.array([n for n in range(N) if n != pi[k] - 1 or pi[k] == 0])
        per_slot.append((cols, channels.g[k, cols]))
    p = _spend(profile.availability(config.initial_battery), per_slot, config)

    alloc = ScAllocation(pi=pi)
    schedule = PowerSchedule(q=q, p=p, rate=achievable_rate(p, channels.g, config))
    report = check_feasibility(schedule, channels, config, alloc)
    if not report:
        raise RuntimeError(f"baseline schedule violated {report.constraint} "
                           f"at slot {report.slot}")
    return schedule.rate


def constant_wet_run(channels: ChannelBlock, config: SystemConfig,
                     sc_mode: str) -> float:
    """EAP transmits K*Q/(K-1) on slots 1..K-1 (block average exactly Q) on
    the per-slot best sub-channel (dynamic) or the best fixed one (static)."""
    if sc_mode not in ("dynamic", "static"):
        raise ValueError(f"sc_mode must be 'dynamic' or 'static', got {sc_mode!r}")
    K, N = config.num_slots, config.num_subchannels
    if sc_mode == "dynamic":
        pi = best_sc_per_slot(channels.h)
        pi[-1] = 0
        return _constant_wet_rate(channels, config, pi)
    best = -1.0
    for n in range(1, N + 1):
        pi = np.full(K, n, dtype=int)
        pi[-1] = 0
        rate = _constant_wet_rate(channels, config, pi)
        if rate > best:
            best = rate
    return best
