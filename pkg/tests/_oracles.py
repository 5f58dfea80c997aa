"""Small brute-force solvers used only to compute expected values in tests.

These deliberately avoid the production code paths they are used to check:
`exact_waterfill` is the closed-form sorted-prefix level (no bisection),
`grid_staircase_rate` enumerates per-slot budgets directly, and
`grid_joint_rate` grids the energy-transfer split without any of the
dominating-slot machinery.
"""

from __future__ import annotations

import itertools

import numpy as np


def exact_waterfill(floors, budget: float) -> np.ndarray:
    """Closed-form water-filling over noise floors (noise / gain)."""
    floors = np.asarray(floors, dtype=float)
    if budget <= 0 or floors.size == 0:
        return np.zeros_like(floors)
    f = np.sort(floors)
    levels = (budget + np.cumsum(f)) / np.arange(1, f.size + 1)
    hits = np.nonzero(levels > f)[0]
    # a budget below float resolution of the lowest floor leaves no hit
    nu = levels[hits[-1]] if hits.size else levels[0]
    return np.maximum(nu - floors, 0.0)


def wf_objective(gains, powers, noise: float) -> float:
    return float(np.log2(1.0 + np.asarray(gains) * np.asarray(powers) / noise).sum())


def causal_spend(avail, floors_per_slot) -> list[np.ndarray]:
    """Optimal spend under prefix constraints by forward pooling with the
    closed-form fill; used as the inner solver of the joint-allocation grid."""
    segments = []  # (start, end, budget)
    K = len(avail)
    for k in range(K):
        segments.append([k, k + 1, float(avail[k])])
        while len(segments) >= 2:
            left, right = segments[-2], segments[-1]
            nu_l = _segment_level(floors_per_slot, *left)
            nu_r = _segment_level(floors_per_slot, *right)
            if nu_l <= nu_r * (1 + 1e-12):
                break
            segments[-2:] = [[left[0], right[1], left[2] + right[2]]]
    powers = []
    for start, end, budget in segments:
        floors = np.concatenate([floors_per_slot[k] for k in range(start, end)])
        fill = exact_waterfill(floors, budget)
        offset = 0
        for k in range(start, end):
            n = len(floors_per_slot[k])
            powers.append(fill[offset:offset + n])
            offset += n
    return powers


def _segment_level(floors_per_slot, start, end, budget) -> float:
    floors = np.concatenate([floors_per_slot[k] for k in range(start, end)])
    if floors.size == 0:
        return np.inf if budget > 0 else 0.0
    if budget <= 0:
        return float(floors.min())
    f = np.sort(floors)
    levels = (budget + np.cumsum(f)) / np.arange(1, f.size + 1)
    hits = np.nonzero(levels > f)[0]
    return float(levels[hits[-1]] if hits.size else levels[0])


def grid_staircase_rate(avail, gains_per_slot, noise: float, steps: int = 400) -> float:
    """Direct enumeration of per-slot spending for 1..3 slots: grid the early
    slot totals subject to the running-sum constraints, fill each slot's
    sub-channels with the closed form, keep the best rate."""
    K = len(avail)
    avail = np.asarray(avail, dtype=float)
    total = avail.sum()
    floors = [noise / np.asarray(g, dtype=float) for g in gains_per_slot]

    def slot_rate(k, budget):
        return wf_objective(gains_per_slot[k], exact_waterfill(floors[k], budget), noise)

    if K == 1:
        return slot_rate(0, total)
    best = -np.inf
    if K == 2:
        for t1 in np.linspace(0.0, avail[0], steps + 1):
            best = max(best, slot_rate(0, t1) + slot_rate(1, total - t1))
        return best
    if K == 3:
        cap1 = avail[0]
        cap2 = avail[0] + avail[1]
        for t1 in np.linspace(0.0, cap1, steps + 1):
            for t2 in np.linspace(0.0, cap2 - t1, steps + 1):
                best = max(best,
                           slot_rate(0, t1) + slot_rate(1, t2)
                           + slot_rate(2, total - t1 - t2))
        return best
    raise NotImplementedError("grid oracle supports at most 3 slots")


def _wit_floors(pi, g, noise):
    K, N = g.shape
    floors = []
    for k in range(K):
        cols = [n for n in range(N) if pi[k] == 0 or n != pi[k] - 1]
        floors.append(noise / g[k, cols])
    return floors


def _joint_rate_for_split(pi, wet_q, h, g, config):
    """Rate of the best user schedule once each firing slot's energy is fixed."""
    K, N = g.shape
    noise = config.effective_noise
    arrivals = np.zeros(K)
    for k, qk in wet_q.items():
        arrivals[k] = config.efficiency * h[k, pi[k] - 1] * qk
    avail = np.empty(K)
    avail[0] = config.initial_battery
    avail[1:] = arrivals[:-1]
    floors = _wit_floors(pi, g, noise)
    powers = causal_spend(avail, floors)
    total = 0.0
    for k in range(K):
        cols = [n for n in range(N) if pi[k] == 0 or n != pi[k] - 1]
        total += wf_objective(g[k, cols], powers[k], noise)
    return total / (K * N)


def grid_joint_rate(pi, h, g, config, resolution: float = 1e-3) -> float:
    """Brute-force the joint problem for one sub-channel assignment: grid the
    energy-transfer split across the firing slots (the full block budget is
    always radiated since more harvest never shrinks the feasible set).

    One firing slot needs no grid; two use a flat grid at the requested
    resolution; three use a coarse grid plus two refinements, valid because
    the rate is jointly concave in the split.
    """
    K = len(pi)
    wet_slots = [k for k in range(K - 1) if pi[k] > 0]
    total_q = K * config.eap_avg_power

    if not wet_slots or total_q == 0:
        return _joint_rate_for_split(pi, {}, h, g, config)
    if len(wet_slots) == 1:
        return _joint_rate_for_split(pi, {wet_slots[0]: total_q}, h, g, config)

    def rate_at(fractions):
        split = dict(zip(wet_slots, np.asarray(fractions) * total_q))
        return _joint_rate_for_split(pi, split, h, g, config)

    if len(wet_slots) == 2:
        ts = np.arange(0.0, 1.0 + resolution / 2, resolution)
        return max(rate_at((t, 1.0 - t)) for t in ts)

    if len(wet_slots) == 3:
        best_t, best_rate, width = (1 / 3, 1 / 3), -np.inf, 1.0
        grid_n = 40
        for _ in range(3):
            lo1 = max(0.0, best_t[0] - width / 2)
            lo2 = max(0.0, best_t[1] - width / 2)
            for t1 in np.linspace(lo1, min(1.0, lo1 + width), grid_n + 1):
                for t2 in np.linspace(lo2, min(1.0 - t1, lo2 + width), grid_n + 1):
                    if t1 + t2 > 1.0 + 1e-12:
                        continue
                    r = rate_at((t1, t2, 1.0 - t1 - t2))
                    if r > best_rate:
                        best_rate, best_t = r, (t1, t2)
            width /= grid_n / 4  # keep a few coarse cells of slack per round
        return best_rate

    raise NotImplementedError("grid oracle supports at most 3 firing slots")


def exhaustive_joint_rate(h, g, config, resolution: float = 1e-3) -> float:
    """Max of grid_joint_rate over every sub-channel assignment with no
    energy transfer in the final slot."""
    K, N = g.shape
    best = -np.inf
    for head in itertools.product(range(N + 1), repeat=K - 1):
        pi = np.array(head + (0,), dtype=int)
        best = max(best, grid_joint_rate(pi, h, g, config, resolution))
    return best
