from __future__ import annotations

import random

import pytest
from fastapi.testclient import TestClient

import ramseykit as rk
from ramseykit.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, text: str, s: int, t: int, fmt: str = "auto"):
    r = client.post("/sessions", json={"text": text, "s": s, "t": t, "format": fmt})
    assert r.status_code == 200, r.text
    return r.json()


def test_create_witness_session(client, witness_text):
    data = make_session(client, witness_text, 4, 8)
    assert data["report"]["valid"] is True
    assert data["report"]["violations"] == []
    assert data["session"]["n"] == 57
    assert data["session"]["undo_depth"] == 0


def test_create_invalid_coloring_reports_violations(client):
    text = rk.emit_adjacency_list(rk.EdgeColoring.constant(5, rk.Color.COLOR1))
    data = make_session(client, text, 3, 3)
    assert data["report"]["valid"] is False
    assert data["report"]["violations"][0] == {"color": 1, "vertices": [0, 1, 2]}


def test_create_errors(client):
    assert client.post("/sessions", json={"text": "0: 1\n1:\n", "s": 3, "t": 3}).status_code == 400
    r = client.post("/sessions", json={"text": "?\n", "s": 3, "t": 3, "format": "tri"})
    assert r.status_code == 422
    assert client.post("/sessions", json={"text": "0:\n", "s": 0, "t": 3}).status_code == 400


def test_flip_sequence_on_base48(client, base48):
    data = make_session(client, rk.emit_adjacency_list(base48), 4, 7)
    sid = data["session"]["id"]
    assert data["report"]["valid"] is True
    for i, j in [(0, 10), (9, 13), (12, 16)]:
        r = client.post(f"/sessions/{sid}/flip", json={"i": i, "j": j})
        assert r.status_code == 200
    final = r.json()
    assert final["report"]["valid"] is True
    assert final["session"]["undo_depth"] == 3


def test_flip_undo_restores_report(client, witness_text):
    data = make_session(client, witness_text, 4, 8)
    sid = data["session"]["id"]
    before = client.get(f"/sessions/{sid}/violations").json()
    client.post(f"/sessions/{sid}/flip", json={"i": 0, "j": 2})
    r = client.post(f"/sessions/{sid}/undo")
    assert r.status_code == 200
    assert r.json()["report"] == before
    assert r.json()["session"]["undo_depth"] == 0


def test_flip_errors(client, base48):
    data = make_session(client, rk.emit_adjacency_list(base48), 4, 7)
    sid = data["session"]["id"]
    assert client.post(f"/sessions/{sid}/flip", json={"i": 3, "j": 3}).status_code == 400
    assert client.post(f"/sessions/{sid}/flip", json={"i": 0, "j": 99}).status_code == 400
    assert client.post("/sessions/none/flip", json={"i": 0, "j": 1}).status_code == 404


def test_undo_empty_stack_conflicts(client, base48):
    data = make_session(client, rk.emit_adjacency_list(base48), 4, 7)
    sid = data["session"]["id"]
    assert client.post(f"/sessions/{sid}/undo").status_code == 409


def test_get_state(client, witness_text):
    data = make_session(client, witness_text, 4, 8)
    sid = data["session"]["id"]
    r = client.get(f"/sessions/{sid}")
    assert r.status_code == 200
    state = r.json()["session"]
    assert state["n"] == 57
    assert state["s"] == 4 and state["t"] == 8
    parsed = rk.parse_triangle_matrix(state["triangle"])
    assert parsed == rk.parse_adjacency_list(witness_text)


def test_violations_limit_and_truncation(client):
    text = rk.emit_adjacency_list(rk.EdgeColoring.constant(6, rk.Color.COLOR1))
    data = make_session(client, text, 3, 3)
    sid = data["session"]["id"]
    r = client.get(f"/sessions/{sid}/violations", params={"limit": 5})
    body = r.json()
    assert len(body["violations"]) == 5
    assert body["truncated"] is True
    assert client.get(f"/sessions/{sid}/violations", params={"limit": 0}).status_code == 400


def test_export_round_trips(client, witness_text):
    data = make_session(client, witness_text, 4, 8)
    sid = data["session"]["id"]
    r = client.get(f"/sessions/{sid}/export", params={"format": "adj"})
    assert r.text == witness_text
    r = client.get(f"/sessions/{sid}/export", params={"format": "tri"})
    assert rk.parse_triangle_matrix(r.text) == rk.parse_adjacency_list(witness_text)
    assert client.get(f"/sessions/{sid}/export", params={"format": "xml"}).status_code == 400


def test_export_after_flip_and_undo_is_byte_identical(client, witness_text):
    data = make_session(client, witness_text, 4, 8)
    sid = data["session"]["id"]
    client.post(f"/sessions/{sid}/flip", json={"i": 1, "j": 5})
    client.post(f"/sessions/{sid}/undo")
    r = client.get(f"/sessions/{sid}/export", params={"format": "adj"})
    assert r.text == witness_text


def test_sessions_are_isolated(client, base48):
    text = rk.emit_adjacency_list(base48)
    a = make_session(client, text, 4, 7)["session"]["id"]
    b = make_session(client, text, 4, 7)["session"]["id"]
    client.post(f"/sessions/{a}/flip", json={"i": 0, "j": 1})
    rb = client.get(f"/sessions/{b}")
    assert rb.json()["session"]["undo_depth"] == 0
    assert rb.json()["report"]["valid"] is True


def test_ttl_eviction(base48):
    client = TestClient(create_app(ttl_seconds=0.0))
    sid = make_session(client, rk.emit_adjacency_list(base48), 4, 7)["session"]["id"]
    # ttl 0: the session is already stale on the next request
    assert client.get(f"/sessions/{sid}").status_code == 404


def test_reports_always_match_from_scratch_verification(client):
    rng = random.Random(13)
    base = rk.coloring_from_z(rk.ZVector.total(9, [rng.random() < 0.5 for _ in range(8)]))
    data = make_session(client, rk.emit_adjacency_list(base), 3, 4)
    sid = data["session"]["id"]
    current = base
    for _ in range(25):
        i = rng.randrange(9)
        j = rng.randrange(9)
        if i == j:
            continue
        r = client.post(f"/sessions/{sid}/flip", json={"i": i, "j": j})
        current = rk.flip_edge(current, i, j)
        want = rk.enumerate_violations(current, 3, 4, 50).to_dict()
        assert r.json()["report"] == want
