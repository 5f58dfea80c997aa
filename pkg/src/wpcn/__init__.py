"""OFDM wireless-powered communication simulator.

Joint sub-channel and power allocation for a single-user system where an
energy access point powers a user's uplink over orthogonal sub-channels:
full-CSI optimal schedules, a causal observe-then-transmit policy, the
comparison baselines and a Monte-Carlo experiment harness.
"""

__version__ = "0.1.0"

from .channel import ChannelBlock, generate_channel, pathloss_linear
from .config import SystemConfig, from_mapping, load_config
from .offline import (DominatingStructure, PowerSchedule, ScAllocation,
                      achievable_rate, best_sc_per_slot, check_feasibility,
                      dominating_set, dynamic_sc_allocation,
                      exhaustive_sc_oracle, joint_power_allocation,
                      static_sc_search, upper_bound_rate)
from .online import (WindowPlan, optimal_cutoff, run_online,
                     secretary_probability, window_partition)
from .waterfill import StaircaseResult, WfResult, staircase_waterfill, waterfill

__all__ = [
    "ChannelBlock", "DominatingStructure", "PowerSchedule", "ScAllocation",
    "StaircaseResult", "SystemConfig", "WfResult", "WindowPlan",
    "achievable_rate", "best_sc_per_slot", "check_feasibility",
    "dominating_set", "dynamic_sc_allocation", "exhaustive_sc_oracle",
    "from_mapping", "generate_channel", "joint_power_allocation",
    "load_config", "optimal_cutoff", "pathloss_linear", "run_online",
    "secretary_probability", "static_sc_search", "staircase_waterfill",
    "upper_bound_rate", "waterfill", "window_partition",
]
