"""Pydantic request/response models for the allocation service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from . import config as _config

OfflineScheme = Literal["dynamic_joint", "static_joint", "upper_bound"]
OnlineVariant = Literal["ott_dynamic", "no_observe_dynamic",
                        "ott_static", "no_observe_static"]
SweepName = Literal["eap_power_mw", "window_size"]


class ConfigModel(BaseModel):
    """Human-unit system parameters; mirrors the YAML config schema."""

    num_slots: int = 61
    num_subchannels: int = 16
    eap_avg_power_mw: float = 60.0
    initial_battery_j: float = 0.0
    efficiency: float = 0.2
    snr_gap_db: float = 9.0
    noise_density_dbm_per_hz: float = -174.0
    sc_bandwidth_hz: float = 4e6
    carrier_freq_hz: float = 900e6
    dist_eap_user_m: float = 3.0
    dist_user_dap_m: float = 7.0
    pathloss_exponent: float = 3.0
    rms_delay_spread_s: float = 0.02e-6
    num_taps: int = 8

    def to_system(self) -> _config.SystemConfig:
        return _config.from_mapping(self.model_dump())


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str


class WaterfillRequest(BaseModel):
    gains: list[float]
    budget: float = Field(ge=0)
    noise_floor: float = Field(gt=0)


class WaterfillResponse(BaseModel):
    powers: list[float]
    water_level: float
    iterations: int


class ChannelRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    seed: int = 0


class ChannelResponse(BaseModel):
    h: list[list[float]]
    g: list[list[float]]
    seed: int


class OfflineAllocationRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    seed: int = 0
    scheme: OfflineScheme = "dynamic_joint"


class OnlineRunRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    seed: int = 0
    window_size: int = 15
    variant: OnlineVariant = "ott_dynamic"


class AllocationResponse(BaseModel):
    scheme: str
    rate_bpshz: float
    sc_allocation: list[int]       # 0 means no energy transfer that slot
    eap_power_w: list[float]
    user_power_w: list[list[float]]


class ExperimentRequest(BaseModel):
    config: ConfigModel = ConfigModel()
    sweep_name: SweepName = "eap_power_mw"
    sweep_values: list[float]
    schemes: list[str]
    realizations: int = Field(default=200, ge=1)
    seed: int = 1
    window_size: int = 15


class ResultRowModel(BaseModel):
    scheme: str
    sweep_name: str
    sweep_value: float
    mean_rate_bpshz: float
    std_rate: float
    realizations: int
    seed: int


class ExperimentResponse(BaseModel):
    rows: list[ResultRowModel]


class OracleCheckRequest(BaseModel):
    num_slots: int = Field(default=3, ge=2, le=6)
    num_subchannels: int = Field(default=2, ge=1, le=3)
    instances: int = Field(default=20, ge=1)
    seed: int = 0
    eap_avg_power_mw: float = 60.0
    initial_battery_j: float = 0.0


class OracleInstanceModel(BaseModel):
    seed: int
    oracle_rate: float
    dynamic_rate: float
    static_rate: float
    upper_bound_rate: float
    ok: bool


class OracleCheckResponse(BaseModel):
    ok: bool
    instances: list[OracleInstanceModel]


class CutoffResponse(BaseModel):
    window_size: int
    cutoff: int
    success_probability: float
