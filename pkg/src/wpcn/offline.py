"""Full-CSI allocation: dominating-slot structure, joint power allocation for
the energy and data links, sub-channel selection schemes and the
interference-free upper bound.

Slot and sub-channel indices are 1-based in all public structures; 0 is the
dummy sub-channel meaning "no energy transfer this slot".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelBlock
from .config import SystemConfig
from .waterfill import waterfill

# Relative feasibility tolerance; the water-level solver is ~1e-12 so this
# leaves headroom.
FEAS_RTOL = 1e-9


@dataclass(frozen=True)
class ScAllocation:
    """Energy sub-channel per slot: pi[k] in {0,..,N}, 0 = none.

    The final slot never carries energy transfer (harvest arriving after the
    block ends is useless), so pi[-1] must be 0.
    """

    pi: np.ndarray

    def __post_init__(self) -> None:
        pi = np.asarray(self.pi, dtype=int)
        object.__setattr__(self, "pi", pi)
        if pi.ndim != 1 or pi.size < 1:
            raise ValueError("pi must be a nonempty vector")
        if pi.min() < 0:
            raise ValueError("sub-channel indices must be nonnegative")
        if pi[-1] != 0:
            raise ValueError("no energy transfer is allowed in the final slot")


@dataclass(frozen=True)
class DominatingStructure:
    """Causally dominating slots d_1 < ... < d_m and the induced intervals."""

    d: tuple[int, ...]
    num_slots: int

    def __post_init__(self) -> None:
        if any(not 1 <= dj <= self.num_slots - 1 for dj in self.d):
            raise ValueError("dominating slots must lie in 1..K-1")
        if any(a >= b for a, b in zip(self.d, self.d[1:])):
            raise ValueError("dominating slots must be strictly increasing")

    def intervals(self) -> list[tuple[int, int]]:
        """Partition of 1..K as inclusive (start, end) pairs; interval i ends
        at d_i, the last one ends at K."""
        bounds = (0,) + self.d + (self.num_slots,)
        return [(bounds[i] + 1, bounds[i + 1]) for i in range(len(self.d) + 1)]


@dataclass
class PowerSchedule:
    """A complete transmit schedule: EAP power per slot (on that slot's
    energy sub-channel) and user power per slot and sub-channel."""

    q: np.ndarray      # (K,) W
    p: np.ndarray      # (K, N) W
    rate: float        # bps/Hz


@dataclass(frozen=True)
class FeasibilityReport:
    ok: bool
    constraint: str | None = None  # negative_power | wet_sc_power | causality | eap_power
    slot: int | None = None        # 1-based slot of the first violation

    def __bool__(self) -> bool:
        return self.ok


def achievable_rate(p: np.ndarray, g: np.ndarray, config: SystemConfig) -> float:
    """Block-average rate in bps/Hz; entries of p on excluded sub-channels
    are zero and contribute nothing."""
    if np.any(p < 0):
        raise ValueError("powers must be nonnegative")
    snr = g * p / config.effective_noise
    return float(np.log2(1.0 + snr).sum() / (config.num_slots * config.num_subchannels))


def wit_mask_for(alloc: ScAllocation, num_subchannels: int,
                 wit_on_all_scs: bool = False) -> np.ndarray:
    """Boolean (K, N) mask of sub-channels available to the data link."""
    K = alloc.pi.size
    mask = np.ones((K, num_subchannels), dtype=bool)
    if not wit_on_all_scs:
        rows = np.nonzero(alloc.pi > 0)[0]
        mask[rows, alloc.pi[rows] - 1] = False
    return mask


def gains_on_allocation(h: np.ndarray, pi: np.ndarray) -> np.ndarray:
    """h restricted to each slot's energy sub-channel, 0 on dummy slots."""
    K = pi.size
    out = np.zeros(K)
    rows = np.nonzero(pi > 0)[0]
    out[rows] = h[rows, pi[rows] - 1]
    return out


def check_feasibility(schedule: PowerSchedule, channels: ChannelBlock,
                      config: SystemConfig, sc_alloc: ScAllocation,
                      wit_mask: np.ndarray | None = None) -> FeasibilityReport:
    """Verify nonnegativity, the orthogonality of energy and data
    sub-channels, per-slot energy causality and the EAP average power cap.
    Reports the first violated constraint."""
    q, p = schedule.q, schedule.p
    K = config.num_slots
    if wit_mask is None:
        wit_mask = wit_mask_for(sc_alloc, config.num_subchannels)

    if np.any(q < 0):
        return FeasibilityReport(False, "negative_power", int(np.nonzero(q < 0)[0][0]) + 1)
    if np.any(p < 0):
        return FeasibilityReport(False, "negative_power",
                                 int(np.nonzero(np.any(p < 0, axis=1))[0][0]) + 1)
    blocked = p[~wit_mask]
    if blocked.size and np.any(blocked > 0):
        slot = int(np.nonzero(np.any(np.where(wit_mask, 0.0, p) > 0, axis=1))[0][0]) + 1
        return FeasibilityReport(False, "wet_sc_power", slot)

    harvest = config.efficiency * gains_on_allocation(channels.h, sc_alloc.pi) * q
    spent = np.cumsum(p.sum(axis=1))
    available = config.initial_battery + np.concatenate(([0.0], np.cumsum(harvest)[:-1]))
    bad = spent > available + FEAS_RTOL * (available + 1.0)
    if bad.any():
        return FeasibilityReport(False, "causality", int(np.nonzero(bad)[0][0]) + 1)

    if q.sum() / K > config.eap_avg_power + FEAS_RTOL * config.eap_avg_power:
        return FeasibilityReport(False, "eap_power", None)
    return FeasibilityReport(True)


def best_sc_per_slot(h: np.ndarray) -> np.ndarray:
    """Per-slot strongest energy-link sub-channel (1-based); ties go to the
    smallest index."""
    if np.any(h <= 0):
        raise ValueError("h must be strictly positive")
    return np.argmax(h, axis=1) + 1


def dominating_set(h_on_pi: np.ndarray, pi: np.ndarray) -> DominatingStructure:
    """Slots whose energy-link gain strictly exceeds every earlier slot's.

    Slot 1 qualifies whenever it carries a real sub-channel; the final slot
    never qualifies. Dummy slots count as gain 0 in the running maximum.
    """
    h_on_pi = np.asarray(h_on_pi, dtype=float)
    pi = np.asarray(pi, dtype=int)
    K = pi.size
    if np.any((h_on_pi == 0) != (pi == 0)):
        raise ValueError("h_on_pi must be zero exactly on dummy slots")
    d: list[int] = []
    if pi[0] != 0:
        d.append(1)
    running = h_on_pi[0]
    for k in range(2, K):
        if pi[k - 1] != 0 and h_on_pi[k - 1] > running:
            d.append(k)
        running = max(running, h_on_pi[k - 1])
    return DominatingStructure(d=tuple(d), num_slots=K)


def dynamic_sc_allocation(h: np.ndarray) -> ScAllocation:
    """Best sub-channel per slot, kept only on its causally dominating slots."""
    K = h.shape[0]
    pi_best = best_sc_per_slot(h)
    h_best = h[np.arange(K), pi_best - 1]
    dom = dominating_set(h_best, pi_best)
    pi = np.zeros(K, dtype=int)
    for dj in dom.d:
        pi[dj - 1] = pi_best[dj - 1]
    return ScAllocation(pi=pi)


def _zero_schedule(config: SystemConfig) -> PowerSchedule:
    return PowerSchedule(q=np.zeros(config.num_slots),
                         p=np.zeros((config.num_slots, config.num_subchannels)),
                         rate=0.0)


def _tight_feasible(q: np.ndarray, p: np.ndarray, h_on: np.ndarray,
                    config: SystemConfig, causality_slack: float,
                    eap_slack: float) -> bool:
    """Rounding-tight causality and budget check for candidate schedules.

    The public check_feasibility tolerance is absolute-ish; at micro-watt
    scales the rate argmax would select candidates that cash it in as
    illegitimate early spending, so candidates are screened at rounding
    precision. The slacks bound the cancellation error of water levels
    (proportional to the noise-floor sums), which is never monetizable:
    that much stray power carries negligible SNR by construction.
    """
    harvest = config.efficiency * h_on * q
    scale = config.initial_battery + harvest.sum()
    spent = np.cumsum(p.sum(axis=1))
    available = config.initial_battery + np.concatenate(([0.0], np.cumsum(harvest)[:-1]))
    if np.any(spent > available + 1e-12 * scale + causality_slack):
        return False
    budget = config.num_slots * config.eap_avg_power
    return q.sum() <= budget * (1 + 1e-12) + eap_slack


def joint_power_allocation(sc_alloc: ScAllocation, channels: ChannelBlock,
                           config: SystemConfig,
                           wit_on_all_scs: bool = False) -> PowerSchedule:
    """Optimal joint energy/data power allocation for a given sub-channel
    assignment.

    For every candidate binding slot d_x (each dominating slot, then K) the
    problem reduces, through the effective gains h_dominating * g, to either
    one water-filling with the combined budget or a two-level water-filling
    that pins the battery to be empty at d_x. Both forms are evaluated,
    mapped back to (q, p), filtered by feasibility and the best rate wins.
    """
    h, g = channels.h, channels.g
    K, N = config.num_slots, config.num_subchannels
    pi = sc_alloc.pi
    if pi.size != K:
        raise ValueError("allocation length must match num_slots")
    if pi.max(initial=0) > N:
        raise ValueError("allocation references an unknown sub-channel")
    noise = config.effective_noise
    zeta, B1 = config.efficiency, config.initial_battery
    harvest_budget = zeta * K * config.eap_avg_power

    mask = wit_mask_for(sc_alloc, N, wit_on_all_scs)
    h_on = gains_on_allocation(h, pi)
    dom = dominating_set(h_on, pi)

    if not dom.d:
        # No slot can ever deliver energy: spend the battery in one level.
        res = waterfill(g[mask], B1, noise)
        p = np.zeros((K, N))
        p[mask] = res.powers
        return PowerSchedule(q=np.zeros(K), p=p, rate=achievable_rate(p, g, config))

    d = dom.d
    best: PowerSchedule | None = None
    causality_slack = 1e-12 * float((noise / g[mask]).sum()) if mask.any() else 0.0
    for x in range(1, len(d) + 2):
        dx = d[x - 1] if x <= len(d) else K
        h_prev = h_on[d[x - 2] - 1] if x >= 2 else 1.0
        battery_scaled = B1 / h_prev

        # Effective-gain scale: h_prev through d_x, then each interval's
        # opening dominating gain.
        scale = np.empty(K)
        scale[:dx] = h_prev
        for i in range(x, len(d) + 1):
            start = d[i - 1] + 1
            end = d[i] if i < len(d) else K
            scale[start - 1:end] = h_on[d[i - 1] - 1]
        g_eff = scale[:, None] * g

        head_mask = mask.copy()
        head_mask[dx:, :] = False
        tail_mask = mask.copy()
        tail_mask[:dx, :] = False

        candidates: list[np.ndarray] = []

        # Single level over the whole block.
        if mask.any() or harvest_budget + battery_scaled == 0:
            res = waterfill(g_eff[mask], harvest_budget + battery_scaled, noise)
            p_prime = np.zeros((K, N))
            p_prime[mask] = res.powers
            candidates.append(p_prime)

        # Two levels: battery exactly exhausted at d_x, harvest spent after.
        feasible_split = True
        p_prime = np.zeros((K, N))
        if head_mask.any():
            p_prime[head_mask] = waterfill(g_eff[head_mask], battery_scaled, noise).powers
        elif battery_scaled > 0:
            feasible_split = False
        if feasible_split and tail_mask.any():
            p_prime[tail_mask] = waterfill(g_eff[tail_mask], harvest_budget, noise).powers
        # An empty tail simply leaves the harvest budget unused (q stays 0),
        # which is the battery-only schedule.
        if feasible_split:
            candidates.append(p_prime)

        # Rounding slop only: the rate argmax would happily cash in any
        # looser tolerance as illegitimate early spending. The floor-sum
        # terms bound water-level cancellation error at poor SNR.
        head_floor_sum = float((noise / g_eff[head_mask]).sum()) if head_mask.any() else 0.0
        tol = 1e-12 * (battery_scaled + harvest_budget + head_floor_sum)
        eap_slack = 1e-12 * float((noise / g_eff[mask]).sum()) / zeta
        for p_prime in candidates:
            surplus = p_prime[:dx].sum() - battery_scaled
            q = np.zeros(K)
            if x == 1:
                # Nothing can be harvested before the first slot, and an
                # under-spent battery here implies an over-drawn EAP budget.
                if abs(surplus) > tol:
                    continue
            else:
                if surplus < -tol:
                    continue
                q[d[x - 2] - 1] = surplus / zeta if surplus > tol else 0.0
            for i in range(x, len(d) + 1):
                start = d[i - 1] + 1
                end = d[i] if i < len(d) else K
                q[d[i - 1] - 1] = p_prime[start - 1:end].sum() / zeta
            p = scale[:, None] * p_prime
            if not _tight_feasible(q, p, h_on, config, causality_slack, eap_slack):
                continue
            sched = PowerSchedule(q=q, p=p, rate=achievable_rate(p, g, config))
            if best is None or sched.rate > best.rate:
                best = sched

    return best if best is not None else _zero_schedule(config)


def static_sc_search(channels: ChannelBlock,
                     config: SystemConfig) -> tuple[ScAllocation, PowerSchedule]:
    """Fix one energy sub-channel for the whole block; exhaust all N choices
    plus the no-energy-transfer allocation. Ties keep the smallest index."""
    K, N = config.num_slots, config.num_subchannels
    best: tuple[ScAllocation, PowerSchedule] | None = None
    for n in range(1, N + 1):
        pi = np.full(K, n, dtype=int)
        pi[-1] = 0
        alloc = ScAllocation(pi=pi)
        sched = joint_power_allocation(alloc, channels, config)
        if best is None or sched.rate > best[1].rate:
            best = (alloc, sched)
    none_alloc = ScAllocation(pi=np.zeros(K, dtype=int))
    none_sched = joint_power_allocation(none_alloc, channels, config)
    if none_sched.rate > best[1].rate:
        best = (none_alloc, none_sched)
    return best


def upper_bound_rate(channels: ChannelBlock, config: SystemConfig) -> float:
    """Rate with the dynamic allocation when the data link may reuse the
    energy sub-channel (ideal interference cancellation)."""
    alloc = dynamic_sc_allocation(channels.h)
    sched = joint_power_allocation(alloc, channels, config, wit_on_all_scs=True)
    return sched.rate


def exhaustive_sc_oracle(channels: ChannelBlock, config: SystemConfig,
                         max_slots: int = 6, max_subchannels: int = 3,
                         ) -> tuple[ScAllocation, PowerSchedule]:
    """Enumerate every allocation with no energy transfer in the final slot.

    Test oracle only: (N+1)^(K-1) candidates, guarded to desk sizes.
    """
    K, N = config.num_slots, config.num_subchannels
    if K > max_slots or N > max_subchannels:
        raise ValueError(
            f"exhaustive search refused for K={K}, N={N} "
            f"(limits {max_slots}, {max_subchannels})")
    best: tuple[ScAllocation, PowerSchedule] | None = None
    for head in itertools.product(range(N + 1), repeat=K - 1):
        alloc = ScAllocation(pi=np.array(head + (0,), dtype=int))
        sched = joint_power_allocation(alloc, channels, config)
        if best is None or sched.rate > best[1].rate:
            best = (alloc, sched)
    return best
