"""Water-filling solvers shared by every allocation scheme.

`waterfill` solves max sum log2(1 + g_i p_i / noise_floor) s.t. sum p = budget,
p >= 0. `staircase_waterfill` adds per-prefix energy-causality constraints and
returns the staircase solution whose water levels are non-decreasing over
slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

# Relative bisection tolerance on the water level.
NU_RTOL = 1e-12
_MAX_BISECT = 200


@dataclass
class WfResult:
    powers: np.ndarray
    water_level: float
    iterations: int


@dataclass
class StaircaseResult:
    powers: list[np.ndarray]   # one vector per slot, matching the gain layout
    water_levels: np.ndarray   # (K,) per-slot level, non-decreasing

    def slot_totals(self) -> np.ndarray:
        return np.array([p.sum() for p in self.powers])


def _exact_level(floors: np.ndarray, budget: float) -> float:
    """Closed-form water level: the level is piecewise linear in the budget,
    so with the active-channel count fixed it has an exact expression; the
    largest consistent count is the optimum."""
    order = np.argsort(floors, kind="stable")
    sorted_floors = floors[order]
    counts = np.arange(1, floors.size + 1)
    levels = (budget + np.cumsum(sorted_floors)) / counts
    consistent = np.nonzero(levels > sorted_floors)[0]
    if not consistent.size:
        # budget below the float resolution of the lowest floor
        return float(levels[0])
    return float(levels[consistent[-1]])


def waterfill(gains, budget: float, noise_floor: float) -> WfResult:
    """Single water-filling over one pool of channels.

    The level is bracketed in [0, budget + max(noise_floor/g)], bisected to
    relative tolerance 1e-12 and then polished on the identified active set
    so the budget is exhausted exactly.
    """
    gains = np.asarray(gains, dtype=float).ravel()
    if budget < 0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    if gains.size == 0:
        if budget > 0:
            raise ValueError("no channels available for a positive budget")
        return WfResult(np.zeros(0), 0.0, 0)
    if np.any(gains <= 0):
        raise ValueError("gains must be strictly positive")

    floors = noise_floor / gains
    if budget == 0:
        return WfResult(np.zeros_like(gains), float(floors.min()), 0)

    lo, hi = 0.0, budget + float(floors.max())
    iterations = 0
    while hi - lo > NU_RTOL * hi and iterations < _MAX_BISECT:
        mid = 0.5 * (lo + hi)
        if np.maximum(mid - floors, 0.0).sum() > budget:
            hi = mid
        else:
            lo = mid
        iterations += 1

    # Polish with the closed form so budget exhaustion is exact to rounding.
    nu = _exact_level(floors, budget)
    powers = np.maximum(nu - floors, 0.0)
    return WfResult(powers, nu, iterations)


class _Segment:
    """A maximal run of slots sharing one water level."""

    __slots__ = ("start", "end", "budget", "gains", "splits", "nu", "powers")

    def __init__(self, start, end, budget, gains_parts, noise_floor):
        self.start = start          # slot index range [start, end), 0-based
        self.end = end
        self.budget = budget
        self.gains = np.concatenate(gains_parts) if gains_parts else np.zeros(0)
        self.splits = np.cumsum([len(p) for p in gains_parts])[:-1]
        self._solve(noise_floor)

    def _solve(self, noise_floor):
        if self.gains.size == 0:
            # No channels: any budget is trapped until merged forward.
            self.nu = np.inf if self.budget > 0 else 0.0
            self.powers = np.zeros(0)
            return
        floors = noise_floor / self.gains
        if self.budget <= 0:
            self.nu = float(floors.min())
            self.powers = np.zeros_like(self.gains)
            return
        self.nu = _exact_level(floors, self.budget)
        self.powers = np.maximum(self.nu - floors, 0.0)


def staircase_waterfill(arrivals, gains, noise_floor: float) -> StaircaseResult:
    """Causality-constrained water-filling over slots.

    arrivals[k] is the energy that becomes available at the start of slot k
    (an initial battery is folded into arrivals[0]). gains is a K x M matrix
    or a length-K sequence of per-slot gain vectors. The cumulative power
    spent through any slot never exceeds the cumulative arrivals, the total
    budget is exhausted, and slots merge into segments of equal water level
    by forward-only pooling: a segment is merged with its successor whenever
    its level exceeds the successor's, which never moves energy backwards.
    """
    arrivals = np.asarray(arrivals, dtype=float).ravel()
    if np.any(arrivals < 0):
        raise ValueError("arrivals must be nonnegative")
    per_slot = [np.asarray(row, dtype=float).ravel() for row in gains]
    if len(per_slot) != arrivals.size:
        raise ValueError("gains must provide one vector per slot")

    segments: list[_Segment] = []
    for k, row in enumerate(per_slot):
        segments.append(_Segment(k, k + 1, float(arrivals[k]), [row], noise_floor))
        while len(segments) >= 2 and segments[-2].nu > segments[-1].nu * (1 + 1e-12):
            right = segments.pop()
            left = segments.pop()
            merged = _Segment(
                left.start, right.end, left.budget + right.budget,
                per_slot[left.start:right.end], noise_floor,
            )
            segments.append(merged)

    powers: list[np.ndarray] = []
    levels = np.zeros(arrivals.size)
    for seg in segments:
        parts = np.split(seg.powers, seg.splits) if seg.gains.size else \
            [np.zeros(0) for _ in range(seg.end - seg.start)]
        for offset, part in enumerate(parts):
            powers.append(part)
            levels[seg.start + offset] = seg.nu
    return StaircaseResult(powers=powers, water_levels=levels)
