"""HTTP surface of the allocation service."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from wpcn.service import app

client = TestClient(app)

SMALL_CONFIG = {"num_slots": 7, "num_subchannels": 3, "num_taps": 2}


def test_health():
    res = client.get("/health")
    assert res.status_code == 200
    body = res.json()
    assert body["status"] == "ok" and body["version"]


def test_cutoff_endpoint():
    res = client.get("/cutoff/15")
    assert res.status_code == 200
    body = res.json()
    assert body["cutoff"] == 6
    assert body["success_probability"] == pytest.approx(0.38941, abs=1e-4)


def test_waterfill_endpoint():
    res = client.post("/waterfill", json={"gains": [2.0, 1.0], "budget": 1.0,
                                          "noise_floor": 1.0})
    assert res.status_code == 200
    body = res.json()
    assert body["powers"] == pytest.approx([0.75, 0.25])
    assert body["water_level"] == pytest.approx(1.25)


def test_waterfill_rejects_bad_input():
    res = client.post("/waterfill", json={"gains": [], "budget": 1.0,
                                          "noise_floor": 1.0})
    assert res.status_code == 400
    assert "positive budget" in res.json()["detail"]
    res = client.post("/waterfill", json={"gains": [1.0], "budget": -1.0,
                                          "noise_floor": 1.0})
    assert res.status_code == 422  # schema-level rejection


def test_channel_endpoint_is_deterministic():
    req = {"config": SMALL_CONFIG, "seed": 4}
    a = client.post("/channel", json=req).json()
    b = client.post("/channel", json=req).json()
    assert a == b
    assert np.array(a["h"]).shape == (7, 3)
    assert np.all(np.array(a["g"]) > 0)


def test_offline_allocation_endpoint():
    rates = {}
    for scheme in ("dynamic_joint", "static_joint", "upper_bound"):
        res = client.post("/allocate/offline",
                          json={"config": SMALL_CONFIG, "seed": 2, "scheme": scheme})
        assert res.status_code == 200
        body = res.json()
        assert body["sc_allocation"][-1] == 0
        assert len(body["eap_power_w"]) == 7
        rates[scheme] = body["rate_bpshz"]
    assert rates["upper_bound"] >= rates["dynamic_joint"] >= 0
    assert rates["dynamic_joint"] >= rates["static_joint"] - 1e-12


def test_online_allocation_endpoint():
    res = client.post("/allocate/online",
                      json={"config": SMALL_CONFIG, "seed": 2,
                            "window_size": 2, "variant": "ott_dynamic"})
    assert res.status_code == 200
    body = res.json()
    assert len(body["user_power_w"]) == 7
    assert body["rate_bpshz"] > 0

    res = client.post("/allocate/online",
                      json={"config": SMALL_CONFIG, "seed": 2,
                            "window_size": 4, "variant": "ott_dynamic"})
    assert res.status_code == 400
    assert "does not divide" in res.json()["detail"]

    res = client.post("/allocate/online",
                      json={"config": SMALL_CONFIG, "seed": 2,
                            "window_size": 2, "variant": "psychic"})
    assert res.status_code == 422


def test_experiment_endpoint():
    res = client.post("/experiment", json={
        "config": SMALL_CONFIG, "sweep_name": "eap_power_mw",
        "sweep_values": [20.0, 60.0], "schemes": ["dynamic_joint", "ott_dynamic"],
        "realizations": 2, "seed": 1, "window_size": 3})
    assert res.status_code == 200
    rows = res.json()["rows"]
    assert len(rows) == 4
    by_scheme = {(r["scheme"], r["sweep_value"]): r["mean_rate_bpshz"] for r in rows}
    assert by_scheme[("dynamic_joint", 60.0)] >= by_scheme[("dynamic_joint", 20.0)]


def test_experiment_endpoint_rejects_bad_sweep():
    res = client.post("/experiment", json={
        "config": SMALL_CONFIG, "sweep_name": "window_size",
        "sweep_values": [2.0], "schemes": ["dynamic_joint"],
        "realizations": 1, "seed": 1})
    assert res.status_code == 400
    assert "online" in res.json()["detail"]


def test_oracle_check_endpoint():
    res = client.post("/oracle-check", json={"num_slots": 3, "num_subchannels": 2,
                                             "instances": 2, "seed": 4})
    assert res.status_code == 200
    body = res.json()
    assert body["ok"] and len(body["instances"]) == 2


def test_config_validation_propagates():
    res = client.post("/channel", json={"config": {"num_slots": 1}, "seed": 0})
    assert res.status_code == 400
    assert "num_slots" in res.json()["detail"]
