"""Experiment sweeps, Monte-Carlo aggregation and CSV emission."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .baselines import constant_wet_run, random_arrival_run
from .channel import generate_channel
from .config import SystemConfig, mw_to_watts
from .offline import (dynamic_sc_allocation, exhaustive_sc_oracle,
                      joint_power_allocation, static_sc_search,
                      upper_bound_rate)
from .online import VARIANTS as ONLINE_SCHEMES
from .online import run_online

OFFLINE_SCHEMES = ("upper_bound", "dynamic_joint", "static_joint",
                   "dynamic_constant", "static_constant", "random_arrival")
ALL_SCHEMES = OFFLINE_SCHEMES + ONLINE_SCHEMES

SWEEP_EAP_POWER = "eap_power_mw"
SWEEP_WINDOW = "window_size"

CSV_HEADER = ("scheme", "sweep_name", "sweep_value", "mean_rate_bpshz",
              "std_rate", "realizations", "seed")


@dataclass(frozen=True)
class ExperimentSpec:
    config: SystemConfig
    sweep_name: str
    sweep_values: tuple[float, ...]
    schemes: tuple[str, ...]
    realizations: int = 200
    seed: int = 1
    window_size: int = 15   # L used by online schemes in power sweeps

    def __post_init__(self) -> None:
        if self.realizations < 1:
            raise ValueError("realizations must be at least 1")
        if self.sweep_name not in (SWEEP_EAP_POWER, SWEEP_WINDOW):
            raise ValueError(f"unknown sweep {self.sweep_name!r}")
        if not self.sweep_values:
            raise ValueError("sweep_values must be nonempty")
        unknown = [s for s in self.schemes if s not in ALL_SCHEMES]
        if unknown:
            raise ValueError(f"unknown schemes: {unknown}")
        K = self.config.num_slots
        needs_l = [s for s in self.schemes if s in ONLINE_SCHEMES]
        if self.sweep_name == SWEEP_WINDOW:
            if not needs_l:
                raise ValueError("a window-size sweep needs at least one online scheme")
            sizes = self.sweep_values
        else:
            sizes = (self.window_size,) if needs_l else ()
        for L in sizes:
            if int(L) != L or (K - 1) % int(L) != 0:
                raise ValueError(f"window size {L} does not divide K-1={K - 1}")


@dataclass(frozen=True)
class ResultRow:
    scheme: str
    sweep_name: str
    sweep_value: float
    mean_rate: float
    std_rate: float
    realizations: int
    seed: int


def scheme_rate(scheme: str, channels, config: SystemConfig,
                window_size: int) -> float:
    """One realization's rate for the named scheme."""
    if scheme == "upper_bound":
        return upper_bound_rate(channels, config)
    if scheme == "dynamic_joint":
        alloc = dynamic_sc_allocation(channels.h)
        return joint_power_allocation(alloc, channels, config).rate
    if scheme == "static_joint":
        return static_sc_search(channels, config)[1].rate
    if scheme == "dynamic_constant":
        return constant_wet_run(channels, config, "dynamic")
    if scheme == "static_constant":
        return constant_wet_run(channels, config, "static")
    if scheme == "random_arrival":
        return random_arrival_run(channels, config, seed=channels.seed)
    if scheme in ONLINE_SCHEMES:
        return run_online(channels, config, window_size, scheme)[1].rate
    raise ValueError(f"unknown scheme {scheme!r}")


def run_experiment(spec: ExperimentSpec) -> list[ResultRow]:
    """Mean/std rate per (scheme, sweep point) over seeded realizations.

    Realization r of every scheme and sweep point shares the channel block
    seeded with seed XOR r, so comparisons are paired and the result is
    independent of evaluation order.
    """
    n_schemes, n_values = len(spec.schemes), len(spec.sweep_values)
    rates = np.zeros((n_schemes, n_values, spec.realizations))
    for r in range(spec.realizations):
        channels = generate_channel(spec.config, spec.seed ^ r)
        for vi, value in enumerate(spec.sweep_values):
            if spec.sweep_name == SWEEP_EAP_POWER:
                cfg = replace(spec.config, eap_avg_power=mw_to_watts(value))
                window = spec.window_size
            else:
                cfg = spec.config
                window = int(value)
            for si, scheme in enumerate(spec.schemes):
                rates[si, vi, r] = scheme_rate(scheme, channels, cfg, window)

    rows = []
    for si, scheme in enumerate(spec.schemes):
        for vi, value in enumerate(spec.sweep_values):
            sample = rates[si, vi]
            std = float(np.std(sample, ddof=1)) if spec.realizations > 1 else 0.0
            rows.append(ResultRow(
                scheme=scheme, sweep_name=spec.sweep_name, sweep_value=float(value),
                mean_rate=float(np.mean(sample)), std_rate=std,
                realizations=spec.realizations, seed=spec.seed))
    return rows


def _fmt(value: float) -> str:
    # 17 significant digits round-trips doubles exactly.
    return f"{value:.17g}"


def emit_csv(rows: list[ResultRow], path: str | Path) -> Path:
    """Write the result table; UTF-8, LF line endings, exact float digits."""
    path = Path(path)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([row.scheme, row.sweep_name, _fmt(row.sweep_value),
                         _fmt(row.mean_rate), _fmt(row.std_rate),
                         row.realizations, row.seed])
    try:
        path.write_text(buf.getvalue(), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc
    return path


def read_csv(path: str | Path) -> list[ResultRow]:
    """Parse a result table written by emit_csv."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ValueError(f"{path} does not carry the expected header {CSV_HEADER}")
        rows = []
        for rec in reader:
            rows.append(ResultRow(
                scheme=rec[0], sweep_name=rec[1], sweep_value=float(rec[2]),
                mean_rate=float(rec[3]), std_rate=float(rec[4]),
                realizations=int(rec[5]), seed=int(rec[6])))
    return rows


def oracle_check(config: SystemConfig, instances: int, seed: int) -> dict:
    """Cross-check the heuristics against the exhaustive allocation search on
    small instances: dynamic/static never beat the oracle, the oracle never
    beats the interference-free bound."""
    records = []
    ok = True
    for i in range(instances):
        channels = generate_channel(config, seed ^ i)
        oracle = exhaustive_sc_oracle(channels, config)[1].rate
        dynamic = scheme_rate("dynamic_joint", channels, config, 1)
        static = scheme_rate("static_joint", channels, config, 1)
        upper = upper_bound_rate(channels, config)
        tol = 1e-9 * (1.0 + abs(oracle))
        good = (dynamic <= oracle + tol and static <= oracle + tol
                and oracle <= upper + tol)
        ok = ok and good
        records.append({"seed": seed ^ i, "oracle_rate": oracle,
                        "dynamic_rate": dynamic, "static_rate": static,
                        "upper_bound_rate": upper, "ok": good})
    return {"ok": ok, "instances": records}
