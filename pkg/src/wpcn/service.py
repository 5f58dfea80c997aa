"""FastAPI service exposing the allocation library.

Stateless compute endpoints: channel generation, water-filling, full-CSI and
causal-CSI allocation, experiment sweeps. The CLI is a thin client of this
app (in-process by default).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, schemas
from .channel import generate_channel
from .harness import ExperimentSpec, oracle_check, run_experiment
from .offline import dynamic_sc_allocation, joint_power_allocation, static_sc_search
from .online import optimal_cutoff, run_online, secretary_probability
from .waterfill import waterfill

app = FastAPI(title="wpcn allocation service", version=__version__)


@app.exception_handler(ValueError)
async def _value_error_handler(_: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(version=__version__)


@app.get("/cutoff/{window_size}", response_model=schemas.CutoffResponse)
def cutoff(window_size: int) -> schemas.CutoffResponse:
    f = optimal_cutoff(window_size)
    return schemas.CutoffResponse(
        window_size=window_size, cutoff=f,
        success_probability=secretary_probability(window_size, f))


@app.post("/waterfill", response_model=schemas.WaterfillResponse)
def waterfill_endpoint(req: schemas.WaterfillRequest) -> schemas.WaterfillResponse:
    res = waterfill(req.gains, req.budget, req.noise_floor)
    return schemas.WaterfillResponse(powers=res.powers.tolist(),
                                     water_level=res.water_level,
                                     iterations=res.iterations)


@app.post("/channel", response_model=schemas.ChannelResponse)
def channel(req: schemas.ChannelRequest) -> schemas.ChannelResponse:
    block = generate_channel(req.config.to_system(), req.seed)
    return schemas.ChannelResponse(h=block.h.tolist(), g=block.g.tolist(),
                                   seed=req.seed)


@app.post("/allocate/offline", response_model=schemas.AllocationResponse)
def allocate_offline(req: schemas.OfflineAllocationRequest) -> schemas.AllocationResponse:
    config = req.config.to_system()
    channels = generate_channel(config, req.seed)
    if req.scheme == "static_joint":
        alloc, sched = static_sc_search(channels, config)
    else:
        alloc = dynamic_sc_allocation(channels.h)
        sched = joint_power_allocation(alloc, channels, config,
                                       wit_on_all_scs=req.scheme == "upper_bound")
    return schemas.AllocationResponse(
        scheme=req.scheme, rate_bpshz=sched.rate, sc_allocation=alloc.pi.tolist(),
        eap_power_w=sched.q.tolist(), user_power_w=sched.p.tolist())


@app.post("/allocate/online", response_model=schemas.AllocationResponse)
def allocate_online(req: schemas.OnlineRunRequest) -> schemas.AllocationResponse:
    config = req.config.to_system()
    channels = generate_channel(config, req.seed)
    alloc, sched = run_online(channels, config, req.window_size, req.variant)
    return schemas.AllocationResponse(
        scheme=req.variant, rate_bpshz=sched.rate, sc_allocation=alloc.pi.tolist(),
        eap_power_w=sched.q.tolist(), user_power_w=sched.p.tolist())


@app.post("/experiment", response_model=schemas.ExperimentResponse)
def experiment(req: schemas.ExperimentRequest) -> schemas.ExperimentResponse:
    spec = ExperimentSpec(
        config=req.config.to_system(), sweep_name=req.sweep_name,
        sweep_values=tuple(req.sweep_values), schemes=tuple(req.schemes),
        realizations=req.realizations, seed=req.seed,
        window_size=req.window_size)
    rows = run_experiment(spec)
    return schemas.ExperimentResponse(rows=[
        schemas.ResultRowModel(
            scheme=r.scheme, sweep_name=r.sweep_name, sweep_value=r.sweep_value,
            mean_rate_bpshz=r.mean_rate, std_rate=r.std_rate,
            realizations=r.realizations, seed=r.seed)
        for r in rows])


@app.post("/oracle-check", response_model=schemas.OracleCheckResponse)
def oracle_check_endpoint(req: schemas.OracleCheckRequest) -> schemas.OracleCheckResponse:
    config = schemas.ConfigModel(
        num_slots=req.num_slots, num_subchannels=req.num_subchannels,
        eap_avg_power_mw=req.eap_avg_power_mw,
        initial_battery_j=req.initial_battery_j, num_taps=2).to_system()
    result = oracle_check(config, req.instances, req.seed)
    return schemas.OracleCheckResponse(
        ok=result["ok"],
        instances=[schemas.OracleInstanceModel(**rec) for rec in result["instances"]])
