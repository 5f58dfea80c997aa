"""Causal-CSI scheduling: fixed windows, a secretary-style stopping rule for
the energy-transfer slot, and equal-split power budgeting.

The block is split into windows: {1}, then (K-1)/L windows of L slots. The
EAP fires once per window (never in the last one) with power K*Q/(W-1); the
energy harvested in a window powers the next window's slots in equal shares,
and the initial battery is spread evenly over all K slots. Each slot's
budget is water-filled over that slot's available sub-channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelBlock
from .config import SystemConfig
from .offline import (PowerSchedule, ScAllocation, achievable_rate,
                      check_feasibility)
from .waterfill import waterfill

VARIANTS = ("ott_dynamic", "no_observe_dynamic", "ott_static", "no_observe_static")

# The fixed sub-channel used by the static variants.
STATIC_SC = 1


@dataclass(frozen=True)
class WindowPlan:
    num_slots: int
    window_size: int
    windows: tuple[tuple[int, int], ...]  # inclusive 1-based (start, end)
    cutoff: int                           # observe cutoff-1 slots, then leap

    @property
    def num_windows(self) -> int:
        return len(self.windows)


def window_partition(num_slots: int, window_size: int) -> WindowPlan:
    """{1}, then consecutive L-slot windows covering 2..K; requires L | K-1."""
    K, L = num_slots, window_size
    if not 1 <= L <= K - 1:
        raise ValueError(f"window size must lie in 1..{K - 1}, got {L}")
    if (K - 1) % L != 0:
        raise ValueError(f"window size {L} does not divide K-1={K - 1}")
    windows = [(1, 1)]
    windows += [(2 + i * L, 1 + (i + 1) * L) for i in range((K - 1) // L)]
    return WindowPlan(num_slots=K, window_size=L, windows=tuple(windows),
                      cutoff=optimal_cutoff(L))


def secretary_probability(window_size: int, cutoff: int) -> float:
    """Probability that observe-then-leap with the given cutoff picks the
    maximum of an exchangeable length-L sequence."""
    L, f = window_size, cutoff
    if not 1 <= f <= L:
        raise ValueError(f"cutoff must lie in 1..{L}, got {f}")
    if f == 1:
        return 1.0 / L
    return (f - 1) / L * sum(1.0 / (l - 1) for l in range(f, L + 1))


def optimal_cutoff(window_size: int) -> int:
    """Smallest cutoff maximizing the pick-the-best probability."""
    if window_size < 1:
        raise ValueError("window size must be at least 1")
    probs = [secretary_probability(window_size, f) for f in range(1, window_size + 1)]
    return int(np.argmax(probs)) + 1


def select_stop_slot(observations, cutoff: int) -> int:
    """1-based stop index: first slot at or past the cutoff strictly above
    every earlier observation, else the last slot."""
    observations = list(observations)
    best = -np.inf
    for j, value in enumerate(observations, start=1):
        if j >= cutoff and value > best:
            return j
        best = max(best, value)
    return len(observations)


@dataclass
class OnlinePolicyState:
    """Causal scheduler state, advanced one slot at a time."""

    window_index: int = 1
    slot_in_window: int = 0
    best_gain_seen: float = -np.inf
    fired_this_window: bool = False
    battery: float = 0.0
    wit_budget_per_slot: float = 0.0   # share of the previous window's harvest
    harvested_this_window: float = 0.0


def run_online(channels: ChannelBlock, config: SystemConfig, window_size: int,
               variant: str) -> tuple[ScAllocation, PowerSchedule]:
    """Simulate the observe-then-transmit policy (or its ablations) slot by
    slot using only past and present channel knowledge."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    dynamic = variant.endswith("_dynamic")
    observe = variant.startswith("ott")

    h, g = channels.h, channels.g
    K, N = config.num_slots, config.num_subchannels
    plan = window_partition(K, window_size)
    W = plan.num_windows
    wet_power = K * config.eap_avg_power / (W - 1)
    base_budget = config.initial_battery / K

    q = np.zeros(K)
    pi = np.zeros(K, dtype=int)
    p = np.zeros((K, N))

    state = OnlinePolicyState(battery=config.initial_battery)
    for w, (start, end) in enumerate(plan.windows, start=1):
        length = end - start + 1
        state.window_index = w
        state.slot_in_window = 0
        state.best_gain_seen = -np.inf
        state.fired_this_window = False
        state.wit_budget_per_slot = state.harvested_this_window / length
        state.harvested_this_window = 0.0

        for k in range(start, end + 1):
            state.slot_in_window += 1
            if dynamic:
                sc = int(np.argmax(h[k - 1])) + 1
            else:
                sc = STATIC_SC
            gain = h[k - 1, sc - 1]

            fire = False
            if wet_power == 0:
                pass  # nothing to radiate: keep every sub-channel for data
            elif w == 1:
                fire = True
            elif w < W and not state.fired_this_window:
                if not observe:
                    fire = state.slot_in_window == 1
                else:
                    dominates = (state.slot_in_window >= plan.cutoff
                                 and gain > state.best_gain_seen)
                    fire = dominates or state.slot_in_window == length

            if fire:
                q[k - 1] = wet_power
                pi[k - 1] = sc
                state.fired_this_window = True
                state.harvested_this_window += config.efficiency * gain * wet_power
            state.best_gain_seen = max(state.best_gain_seen, gain)

            budget = base_budget + state.wit_budget_per_slot
            wit_scs = [n for n in range(N) if not (fire and n == sc - 1)]
            if budget > 0 and wit_scs:
                res = waterfill(g[k - 1, wit_scs], budget, config.effective_noise)
                p[k - 1, wit_scs] = res.powers
                state.battery -= budget
            # Harvest lands at the end of the slot, usable from the next one.
            if fire:
                state.battery += config.efficiency * gain * wet_power
            if state.battery < -1e-12 * (config.initial_battery + 1.0):
                raise RuntimeError("online policy overdrew the battery")

    alloc = ScAllocation(pi=pi)
    schedule = PowerSchedule(q=q, p=p, rate=achievable_rate(p, g, config))
    report = check_feasibility(schedule, channels, config, alloc)
    if not report:
        raise RuntimeError(f"online schedule violated {report.constraint} "
                           f"at slot {report.slot}")
    return alloc, schedule
