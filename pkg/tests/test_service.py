"""HTTP surface: request validation, payload shapes, and error mapping."""

import math

import pytest
from starlette.testclient import TestClient

from spherecs.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def test_health(client):
    res = client.get("/health")
    assert res.status_code == 200
    body = res.json()
    assert body["status"] == "ok"
    assert "version" in body


def test_build_state(client):
    res = client.post(
        "/states/build",
        json={"kind": "pacs", "cutoff": 5, "mu_re": 1.0, "m": 1},
    )
    assert res.status_code == 200
    body = res.json()
    assert len(body["pdf"]) == 6
    assert body["pdf"][0] == 0.0
    assert sum(body["pdf"]) == pytest.approx(1.0, abs=1e-12)
    assert body["mean"] == pytest.approx(10.0 / 3.0, rel=1e-12)
    assert body["csv"].splitlines()[1] == "n,amplitude_re,amplitude_im,probability"


def test_build_state_vacuum_has_null_mandel(client):
    res = client.post(
        "/states/build",
        json={"kind": "sphere-cs", "cutoff": 3, "mu_re": 0.0},
    )
    assert res.status_code == 200
    assert res.json()["mandel_q"] is None


def test_build_state_domain_error_is_400(client):
    res = client.post(
        "/states/build",
        json={"kind": "pscs", "cutoff": 3, "mu_re": 0.0, "m": 1},
    )
    assert res.status_code == 400
    assert "mu = 0" in res.json()["detail"]


def test_build_state_schema_error_is_422(client):
    res = client.post("/states/build", json={"kind": "nope", "cutoff": 3})
    assert res.status_code == 422


def test_sweep_roundtrip(client):
    res = client.post(
        "/sweeps/run",
        json={
            "kind": "pacs",
            "cutoff": 4,
            "mu_re": 1.0,
            "m_values": [0, 1],
            "variable": "lambda",
            "grid": {"start": 0.0, "stop": 1.0, "points": 3},
            "observables": ["mean"],
        },
    )
    assert res.status_code == 200
    body = res.json()
    assert body["columns"] == ["lambda", "mean[m=0]", "mean[m=1]"]
    assert len(body["rows"]) == 3
    assert body["csv"].startswith("lambda,mean[m=0],mean[m=1]\n")


def test_sweep_bad_observable_is_422(client):
    res = client.post(
        "/sweeps/run",
        json={
            "kind": "pacs",
            "cutoff": 4,
            "mu_re": 1.0,
            "m_values": [0],
            "variable": "lambda",
            "grid": {"start": 0.0, "stop": 1.0, "points": 3},
            "observables": ["entropy"],
        },
    )
    assert res.status_code == 422


def test_sweep_domain_error_is_400(client):
    # log grid with a zero endpoint fails inside the domain layer
    res = client.post(
        "/sweeps/run",
        json={
            "kind": "pacs",
            "cutoff": 4,
            "mu_re": 1.0,
            "m_values": [0],
            "variable": "lambda",
            "grid": {"start": 0.0, "stop": 1.0, "points": 3, "scale": "log"},
            "observables": ["mean"],
        },
    )
    assert res.status_code == 400


def test_figure_listing_and_fetch(client):
    res = client.get("/figures")
    assert res.status_code == 200
    ids = [f["figure_id"] for f in res.json()]
    assert len(ids) == 16 and "5b" in ids

    res = client.get("/figures/1a")
    assert res.status_code == 200
    body = res.json()
    assert body["filename"] == "fig_1a.csv"
    assert body["svg"] is None
    assert body["csv"].startswith("m,P0")

    res = client.get("/figures/1a", params={"include_svg": "true"})
    assert res.json()["svg"].startswith("<svg")


def test_unknown_figure_is_404(client):
    assert client.get("/figures/zz").status_code == 404


def test_prepare_endpoint(client):
    res = client.post(
        "/preparations/synthesize",
        json={"kind": "flat-cs", "cutoff": 1, "mu_re": 1.0},
    )
    assert res.status_code == 200
    body = res.json()
    assert len(body["steps"]) == 1
    assert body["steps"][0]["eps_re"] == pytest.approx(-math.sin(1.0), abs=1e-12)
    assert body["fidelity"] == pytest.approx(1.0, abs=1e-12)
    assert body["csv"].startswith("# kind=flat-cs")


def test_prepare_policy_knob(client):
    res = client.post(
        "/preparations/synthesize",
        json={
            "kind": "pscs",
            "cutoff": 4,
            "mu_re": 1.0,
            "m": 1,
            "policy": "smallest-magnitude",
        },
    )
    assert res.status_code == 200
    assert res.json()["fidelity"] >= 1 - 1e-8


def test_identity_flat_endpoint(client):
    res = client.post(
        "/identity/check",
        json={"cutoff": 4, "curvature": 0.0, "m": 0, "mode": "flat"},
    )
    assert res.status_code == 200
    body = res.json()
    assert body["max_offdiag"] == 0.0
    assert max(body["deviation"]) < 1e-12
    assert (body["support_lo"], body["support_hi"]) == (0, 4)


def test_identity_divergent_literal_is_500(client):
    res = client.post(
        "/identity/check",
        json={
            "cutoff": 4,
            "curvature": 0.1,
            "m": 1,
            "kind": "pscs",
            "mode": "literal",
        },
    )
    assert res.status_code == 500
    assert "panel" in res.json()["detail"] or "integral" in res.json()["detail"]


def test_identity_flat_mode_rejects_curvature(client):
    res = client.post(
        "/identity/check",
        json={"cutoff": 4, "curvature": 0.5, "m": 0, "mode": "flat"},
    )
    assert res.status_code == 400
