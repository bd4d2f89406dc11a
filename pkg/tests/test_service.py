"""HTTP service contract tests over the in-process test client."""

from __future__ import annotations


import pytest
from fastapi.testclient import TestClient

from conftest import data_path, data_text
from xaiplan.recognition import ObservationSequence, goal_posterior
from xaiplan.service import ServiceState, create_app, replay_log
from xaiplan.vizdoc import validate_document

TRILINE_DOMAIN = data_text("triline.pddl")
TRILINE_PROBLEM = data_text("triline-to-r.pddl")


@pytest.fixture()
def client(tmp_path):
    state = ServiceState(log_dir=tmp_path / "logs",
                         config_dir=data_path("triline.xml").parent)
    app = create_app(state)
    with TestClient(app) as c:
        c.state = state
        yield c


def load_env(client, name="triline.xml") -> str:
    response = client.post("/environments", json={"xml": data_text(name)})
    assert response.status_code == 200, response.text
    return response.json()["environment"]


def open_session(client, env: str) -> tuple[str, dict]:
    response = client.post("/sessions", json={"environment": env})
    assert response.status_code == 200, response.text
    body = response.json()
    return body["session"], body["snapshot"]


# -- Engage -------------------------------------------------------------------

def test_environment_load(client):
    name = load_env(client)
    assert name == "triline-lab"


def test_environment_bad_xml(client):
    response = client.post("/environments", json={"xml": "<environment"})
    assert response.status_code == 400
    assert response.json()["error"] == "XmlSyntaxError"


def test_session_initial_prior(client):
    env = load_env(client)
    sid, snapshot = open_session(client, env)
    validate_document(snapshot)
    assert {e["id"]: e["probability"] for e in snapshot["entries"]} == {
        "reach-r": 0.5, "reach-q": 0.5}
    assert snapshot["observation_count"] == 0
    assert sid


def test_sessions_get_distinct_ids(client):
    env = load_env(client)
    first, _ = open_session(client, env)
    second, _ = open_session(client, env)
    assert first != second


def test_post_observation_updates_belief(client):
    env = load_env(client)
    sid, initial = open_session(client, env)
    response = client.post(f"/sessions/{sid}/observations",
                           json={"t": initial["timestamp"] + 1000, "action": "(c)"})
    assert response.status_code == 200, response.text
    snapshot = response.json()
    validate_document(snapshot)
    probs = {e["id"]: e["probability"] for e in snapshot["entries"]}
    assert probs["reach-r"] == pytest.approx(0.851, abs=1e-3)
    assert probs["reach-q"] == pytest.approx(0.149, abs=1e-3)
    assert snapshot["observation_count"] == 1
    # beliefs endpoint returns the same snapshot
    again = client.get(f"/sessions/{sid}/beliefs")
    assert again.json() == snapshot


def test_post_unknown_session(client):
    response = client.post("/sessions/nope/observations", json={"action": "(a)"})
    assert response.status_code == 404
    assert response.json()["error"] == "UnknownSessionError"


def test_post_unknown_action(client):
    env = load_env(client)
    sid, _ = open_session(client, env)
    response = client.post(f"/sessions/{sid}/observations", json={"action": "(zz)"})
    assert response.status_code == 400
    assert response.json()["error"] == "UnknownActionError"


def test_get_beliefs_is_idempotent(client):
    env = load_env(client)
    sid, initial = open_session(client, env)
    for _ in range(3):
        assert client.get(f"/sessions/{sid}/beliefs").json() == initial


def test_session_matches_scratch_recomputation(client):
    env = load_env(client)
    sid, initial = open_session(client, env)
    labels = ["(a)", "(b)", "(a)"]
    t = initial["timestamp"]
    for label in labels:
        t += 1500
        response = client.post(f"/sessions/{sid}/observations",
                               json={"t": t, "action": label})
        assert response.status_code == 200
    final = client.get(f"/sessions/{sid}/beliefs").json()

    hs = client.state.environments["triline-lab"].hypothesis_set
    cfg = client.state.environments["triline-lab"].recognition
    scratch = goal_posterior(hs, ObservationSequence(tuple(labels)), cfg)
    assert {e["id"]: e["probability"] for e in final["entries"]} == \
        scratch.distribution
    assert final["observation_count"] == 3


def test_timeline_sampling(client):
    env = load_env(client)
    sid, initial = open_session(client, env)
    t0 = initial["timestamp"]
    client.post(f"/sessions/{sid}/observations", json={"t": t0 + 2500, "action": "(a)"})
    response = client.get(f"/sessions/{sid}/timeline", params={"interval": 1.0})
    assert response.status_code == 200
    timeline = response.json()
    validate_document(timeline)
    assert len(timeline["snapshots"]) == 3  # ticks at 0s, 1s, 2s
    counts = [s["snapshot"]["observation_count"] for s in timeline["snapshots"]]
    assert counts == [0, 0, 0]


def test_timeline_interval_longer_than_session(client):
    env = load_env(client)
    sid, _ = open_session(client, env)
    response = client.get(f"/sessions/{sid}/timeline", params={"interval": 3600})
    assert len(response.json()["snapshots"]) == 1


def test_observation_log_enables_replay(client, tmp_path):
    env = load_env(client)
    sid, initial = open_session(client, env)
    t0 = initial["timestamp"]
    for t, label in [(t0 + 1000, "(a)"), (t0 + 2000, "(b)")]:
        client.post(f"/sessions/{sid}/observations", json={"t": t, "action": label})
    log = client.state.sessions[sid].log_path
    assert log is not None and log.exists()
    replayed = replay_log(client.state.environments["triline-lab"], log)
    live = client.state.sessions[sid].belief
    assert replayed == live


def test_monotone_timestamps_enforced(client):
    env = load_env(client)
    sid, initial = open_session(client, env)
    t0 = initial["timestamp"]
    response = client.post(f"/sessions/{sid}/observations",
                           json={"t": t0 - 5000, "action": "(a)"})
    assert response.status_code == 400


def test_snapshot_history_length_invariant(client):
    env = load_env(client)
    sid, initial = open_session(client, env)
    t0 = initial["timestamp"]
    accepted = 0
    for offset, label in [(1000, "(a)"), (2000, "(zz)"), (3000, "(b)"),
                          (-1, "(a)"), (4000, "(c)")]:
        response = client.post(f"/sessions/{sid}/observations",
                               json={"t": t0 + offset, "action": label})
        if response.status_code == 200:
            accepted += 1
    session = client.state.sessions[sid]
    assert accepted == 3  # the unknown label and the stale timestamp bounce
    assert len(session.snapshots) == 1 + accepted


def test_concurrent_posts_serialize(client):
    import threading

    env = load_env(client)
    sid, initial = open_session(client, env)
    t0 = initial["timestamp"]
    statuses = []

    def worker(offset: int):
        # server-side lock must serialize writers; client-supplied times are
        # distinct so ordering conflicts can only come from racing writers
        response = client.post(f"/sessions/{sid}/observations",
                               json={"t": t0 + offset, "action": "(a)"})
        statuses.append(response.status_code)

    threads = [threading.Thread(target=worker, args=(1000 * (i + 1),))
               for i in range(8)]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    session = client.state.sessions[sid]
    accepted = sum(1 for s in statuses if s == 200)
    assert accepted >= 1
    assert len(session.snapshots) == 1 + accepted
    assert len(session.observations) == accepted
    # belief equals a from-scratch posterior over the serialized sequence
    hs = client.state.environments["triline-lab"].hypothesis_set
    cfg = client.state.environments["triline-lab"].recognition
    scratch = goal_posterior(hs, session.observations, cfg)
    assert session.belief == scratch
    # snapshot timestamps stay monotone under racing writers
    times = [s["timestamp"] for s in session.snapshots]
    assert times == sorted(times)


# -- Orchestrate -----------------------------------------------------------------

def test_plan_endpoint(client):
    response = client.post("/plan", json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM})
    assert response.status_code == 200
    doc = response.json()
    validate_document(doc)
    assert doc["plan"] == {"steps": ["(a)", "(b)"], "cost": 2}


def test_plan_satisficing_mode(client):
    response = client.post("/plan", json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM,
        "mode": "satisficing"})
    assert response.status_code == 200
    assert response.json()["plan"]["cost"] >= 2


def test_plan_unsolvable_maps_to_422(client):
    problem = TRILINE_PROBLEM.replace("(:init (p)", "(:init ")
    response = client.post("/plan", json={
        "domain": TRILINE_DOMAIN, "problem": problem})
    assert response.status_code == 422
    assert response.json()["error"] == "Unsolvable"


def test_plan_parse_error_maps_to_400(client):
    response = client.post("/plan", json={
        "domain": "(define", "problem": TRILINE_PROBLEM})
    assert response.status_code == 400


def test_topk_endpoint(client):
    response = client.post("/topk", params={"k": 3}, json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM})
    assert response.status_code == 200
    doc = response.json()
    validate_document(doc)
    assert doc["k"] == 3 and len(doc["plans"]) == 3
    costs = [g["plan"]["cost"] for g in doc["plans"]]
    assert costs == sorted(costs) and costs[0] == 2


def test_explain_endpoint_plans_when_no_plan_given(client):
    response = client.post("/explain", json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM})
    assert response.status_code == 200
    doc = response.json()
    validate_document(doc)
    assert doc["plan"]["steps"] == ["(a)", "(b)"]
    assert doc["relevance"]["total"] == 7
    assert len(doc["relevance"]["relevant"]) == 3
    assert len(doc["relevance"]["grayed"]) == 4
    assert len(doc["model_panel"]) == 7


def test_explain_with_explicit_plan(client):
    response = client.post("/explain", json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM,
        "plan": ["(a)", "(b)"]})
    assert response.status_code == 200


def test_explain_suboptimal_plan_maps_to_422(client):
    response = client.post("/explain", json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM,
        "plan": ["(c)"]})
    assert response.status_code == 422
    assert response.json()["error"] == "PlanNotOptimalError"


def test_explain_budget_exceeded_maps_to_503(client, monkeypatch):
    monkeypatch.setenv("XAIP_BUDGET", "1")
    response = client.post("/explain", json={
        "domain": TRILINE_DOMAIN, "problem": TRILINE_PROBLEM})
    assert response.status_code == 503
    assert response.json()["error"] == "BudgetExceededError"


def test_malformed_request_maps_to_400(client):
    response = client.post("/topk", json={"domain": "x"})  # k missing
    assert response.status_code == 400
    response = client.post("/topk", params={"k": 0}, json={"domain": "x", "problem": "y"})
    assert response.status_code == 400
