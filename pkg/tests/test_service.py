"""HTTP surface: endpoints, wire formats, and error mapping."""

import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from shuffleforge.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_healthz(client):
    resp = client.get("/healthz")
    assert resp.status_code == 200 and resp.json()["ok"]


def test_generate_element(client):
    resp = client.post("/element/generate", json={"n": 3, "spec": "F(1;mu1)"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["element"]["deg"] == [1, 1, 1]
    assert body["tot_deg"] == 0
    assert body["terms"] == 8


def test_generate_bad_spec(client):
    resp = client.post("/element/generate", json={"n": 3, "spec": "nope(1)"})
    assert resp.status_code == 422


def test_star_accepts_specs_and_payloads(client):
    resp = client.post("/element/star", json={"n": 3, "a": "e(0,0)", "b": "e(1,0)"})
    assert resp.status_code == 200
    elem = resp.json()["element"]
    # feed the serialized element back through another endpoint
    resp2 = client.post("/element/wheel", json={"n": 3, "element": elem})
    assert resp2.status_code == 200
    assert resp2.json() == {"ok": True, "convention_dependent": False}


def test_wheel_convention_flag_two_colors(client):
    resp = client.post("/element/wheel", json={"n": 2, "element": "F(1;mu1)"})
    assert resp.status_code == 200
    assert resp.json()["convention_dependent"] is True


def test_commute_streamed_and_materialized(client):
    resp = client.post(
        "/element/commute", json={"n": 3, "a": "F(1;mu1)", "b": "F(1;nu1)"}
    )
    assert resp.json()["zero"] is True
    resp = client.post(
        "/element/commute",
        json={"n": 3, "a": "e(0,1)", "b": "e(1,0)", "materialize": True},
    )
    body = resp.json()
    assert body["zero"] is False and body["terms"] > 0


def test_membership_endpoint(client):
    ok = client.post("/element/membership", json={"n": 3, "element": "F(1;mu1)"}).json()
    assert ok["ok"] is True and ok["intervals_checked"] == 9
    bad = client.post("/element/membership", json={"n": 3, "element": "e(0,0)"}).json()
    assert bad["ok"] is False
    assert bad["violations"][0]["a"] == 0 and bad["violations"][0]["b"] == 0


def test_limits_endpoint_values(client):
    star_resp = client.post("/element/star", json={"n": 3, "a": "e(0,0)", "b": "e(1,0)"})
    elem = star_resp.json()["element"]
    inf = client.post(
        "/element/limits",
        json={"n": 3, "element": elem, "op": "inf", "lvec": [1, 0, 0]},
    ).json()
    assert inf["exists"] and not inf["zero"]
    assert inf["value"]["num"]["terms"] == [{"coeff": "1", "exps": {"d": -1}}]
    zero = client.post(
        "/element/limits",
        json={"n": 3, "element": elem, "op": "zero", "interval": (0, 0)},
    ).json()
    assert zero["exists"]
    assert zero["value"]["num"]["terms"] == [{"coeff": "1", "exps": {"q": 1}}]


def test_slope_zero_endpoint(client):
    resp = client.post("/element/slope-zero", json={"n": 3, "element": "F(1;mu1)"})
    assert resp.json()["ok"] is True
    resp = client.post("/element/slope-zero", json={"n": 3, "element": "e(0,1)"})
    assert resp.json() == {"ok": False, "witness": "tot_deg"}


def test_gordon_endpoints(client):
    resp = client.post(
        "/gordon/phi-l",
        json={"n": 3, "element": "F(1;mu1)", "intervals": "0-2"},
    )
    assert resp.status_code == 200 and resp.json()["poly"]["terms"]
    resp = client.post(
        "/gordon/phi-lambda", json={"n": 3, "element": "F(2;mu1)", "shape": [2]}
    )
    assert resp.json()["ratfunc"]["num"]["terms"] == []
    resp = client.post("/gordon/ql", json={"n": 3, "intervals": "0-0;1-1"})
    assert len(resp.json()["poly"]["terms"]) == 2
    resp = client.get("/gordon/partitions", params={"n": 3, "deg": "1,1,1"})
    assert len(resp.json()["classes"]) == 7


def test_dims_and_rank(client):
    assert client.get("/dims", params={"n": 3, "k": 3}).json()["dim"] == 22
    resp = client.post("/rank", json={"n": 3, "k": 1, "seed": 11})
    body = resp.json()
    assert body == {"rank": 3, "dim_R": 3, "basis": 3, "ok": True}


def test_serre_endpoint(client):
    resp = client.post("/serre", json={"n": 3, "i": 1, "j": 2, "modes": [0, 0, 0]})
    assert resp.json()["zero"] is True
    resp = client.post("/serre", json={"n": 2, "i": 0, "modes": [0, 0, 0, 0]})
    assert resp.json()["zero"] is True


def test_pole_violation_maps_to_422(client):
    # non-adjacent colors in the denominator cannot normalize
    bad = {
        "n": 3,
        "deg": [1, 0, 1],
        "numerator": {"terms": [{"coeff": "1", "exps": {}}]},
    }
    resp = client.post("/element/limits", json={"n": 3, "element": bad, "op": "inf", "lvec": [2, 0, 0]})
    assert resp.status_code == 422
