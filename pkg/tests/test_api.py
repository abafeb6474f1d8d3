import inspect

import pytest
from fastapi.testclient import TestClient

from api import app
from loccqss import __version__
from loccqss.constant import DEFAULT_SIMULATE_TRIALS, DEFAULT_VERIFY_TRIALS

REP3 = {"field": {"p": 2}, "generator": [[1, 1, 1]]}
PARITY_Q2 = {"field": {"p": 2}, "generator": [[1, 0, 1], [0, 1, 1]]}


@pytest.fixture
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json() == {"message": "loccqss API is running", "version": __version__}


def test_analyze(client):
    response = client.post("/analyze", json={"code": REP3})
    assert response.status_code == 200
    body = response.json()
    assert body["command"] == "analyze"
    assert body["exit_code"] == 0
    assert body["report"]["distance_weight"] == 3
    assert body["report"]["is_mds"] is True
    assert "d=3, MDS: true" in body["text"]


def test_subsets(client):
    response = client.post("/subsets", json={"code": PARITY_Q2, "jobs": 2})
    assert response.status_code == 200
    report = response.json()["report"]
    assert report["assisted"] == 3
    assert report["total"] == 6
    assert report["subsets"][0] == {
        "subset_B": [1],
        "subset_A": [2, 3],
        "rank_GB": 1,
        "is_assisted": False,
        "quantum_channels": 0,
        "classical_channels": 2,
    }


def test_simulate(client):
    payload = {"code": REP3, "subset_a": [1, 2], "trials": 3, "seed": 42}
    first = client.post("/simulate", json=payload).json()
    second = client.post("/simulate", json=payload).json()
    assert first == second
    transcripts = first["report"]["transcripts"]
    assert [t["seed"] for t in transcripts] == [42, 43, 44]
    assert all(t["fidelity"] == 1.0 for t in transcripts)

    basis = client.post(
        "/simulate", json={"code": REP3, "subset_a": [3], "secret": "basis:0"}
    ).json()
    assert basis["report"]["transcripts"][0]["recovered"] == [[1.0, 0.0], [0.0, 0.0]]


def test_verify(client):
    body = client.post("/verify", json={"code": PARITY_Q2, "trials": 3}).json()
    assert body["exit_code"] == 0
    assert body["report"]["passed"] == 6
    directions = {v["direction"] for v in body["report"]["verdicts"]}
    assert directions == {"forward", "converse"}

    single = client.post("/verify", json={"code": PARITY_Q2, "subset_a": [1, 2]}).json()
    witness = single["report"]["verdicts"][0]["witness"]
    assert witness["x1"] != witness["x2"]


def test_trial_defaults_follow_command(client):
    verify = client.post("/verify", json={"code": PARITY_Q2, "subset_a": [1]}).json()
    assert verify["report"]["verdicts"][0]["trials"] == DEFAULT_VERIFY_TRIALS == 20

    simulate = client.post("/simulate", json={"code": REP3, "subset_a": [1, 2]}).json()
    assert len(simulate["report"]["transcripts"]) == DEFAULT_SIMULATE_TRIALS


def test_endpoints_run_in_threadpool():
    routes = {"/", "/analyze", "/subsets", "/simulate", "/verify"}
    endpoints = [r.endpoint for r in app.routes if getattr(r, "path", None) in routes]
    assert len(endpoints) == len(routes)
    assert not any(inspect.iscoroutinefunction(e) for e in endpoints)


def test_not_assisted(client):
    response = client.post("/simulate", json={"code": PARITY_Q2, "subset_a": [1, 2]})
    assert response.status_code == 422


def test_budget_exceeded(client):
    wide = {"field": {"p": 2}, "generator": [[1] * 25]}
    assert client.post("/subsets", json={"code": wide}).status_code == 413


@pytest.mark.parametrize(
    "path, payload",
    [
        ("/analyze", {"code": {"field": {"p": 2}}}),
        ("/analyze", {"code": {"field": {"p": 4}, "generator": [[1]]}}),
        ("/analyze", {"code": {"field": {"p": 2}, "generator": [[1, 2]]}}),
        ("/analyze", {"code": {"field": {"p": 2}, "generator": [[1, 1], [1, 1]]}}),
        ("/analyze", {}),
        ("/simulate", {"code": REP3}),
        ("/simulate", {"code": REP3, "subset_a": [0, 1]}),
        ("/simulate", {"code": REP3, "subset_a": [1], "secret": "file:/etc/passwd"}),
        ("/simulate", {"code": REP3, "subset_a": [1], "trials": 0}),
        ("/simulate", {"code": REP3, "subset_a": [1, 2, 3]}),
    ],
)
def test_bad_requests(client, path, payload):
    assert client.post(path, json=payload).status_code == 400
