"""Document builder tests: counts, graying, schema round trips, sampling."""

from __future__ import annotations

import pytest

from xaiplan.errors import ArityMismatchError, EmptySessionError, MismatchedLinksError
from xaiplan.model import build_task, extract_causal_links, make_plan
from xaiplan.recognition import (
    BeliefState,
    HypothesisBelief,
)
from xaiplan.reconcile import relevance
from xaiplan.search import solve_optimal
from xaiplan.topk import TopKResult, top_k
from xaiplan.vizdoc import (
    build_plan_graph,
    build_topk_doc,
    parse_document,
    sample_timeline,
    serialize,
    snapshot_beliefs,
    validate_document,
)


@pytest.fixture(scope="module")
def triline_plan(triline):
    return make_plan(triline, ["(a)", "(b)"])


@pytest.fixture(scope="module")
def triline_links(triline, triline_plan):
    return extract_causal_links(triline, triline_plan)


def test_plan_graph_counts(triline, triline_plan, triline_links):
    doc = build_plan_graph(triline, triline_plan, triline_links)
    assert len(doc["actions"]) == 2
    assert len(doc["conditions"]) == 4
    assert len(doc["links"]) == 3
    assert all("grayed" not in c for c in doc["conditions"])
    assert "relevance" not in doc and "model_panel" not in doc
    validate_document(doc)


def test_plan_graph_role_partition(triline, triline_plan, triline_links):
    doc = build_plan_graph(triline, triline_plan, triline_links)
    by_step_role = {(c["step"], c["role"], c["fact"]) for c in doc["conditions"]}
    assert by_step_role == {
        (0, "precondition", "(p)"), (0, "add", "(q)"),
        (1, "precondition", "(q)"), (1, "add", "(r)"),
    }
    for action in doc["actions"]:
        act = triline.action(action["label"])
        n_conditions = sum(1 for c in doc["conditions"] if c["step"] == action["step"])
        assert n_conditions == len(act.pre) + len(act.add) + len(act.delete)


def test_plan_graph_graying(triline, triline_plan, triline_links):
    report = relevance(triline, triline_plan)
    doc = build_plan_graph(triline, triline_plan, triline_links, relevance=report)
    grayed = {(c["step"], c["role"], c["fact"]) for c in doc["conditions"] if c["grayed"]}
    assert grayed == {(0, "precondition", "(p)")}
    assert [e["grayed"] for e in doc["init"]] == [True]  # INIT(p) is grayed
    panel = doc["model_panel"]
    assert len(panel) == report.total == 7
    assert sum(1 for u in panel if u["grayed"]) == len(report.grayed) == 4
    validate_document(doc)


def test_plan_graph_mismatched_links(triline, triline_plan):
    other = extract_causal_links(triline, make_plan(triline, ["(c)"]))
    with pytest.raises(MismatchedLinksError):
        build_plan_graph(triline, triline_plan, other)


def test_plan_graph_empty_plan():
    task = build_task(["(g)"], [], ["(g)"], ["(g)"])
    plan = make_plan(task, [])
    doc = build_plan_graph(task, plan, extract_causal_links(task, plan))
    assert doc["actions"] == [] and doc["conditions"] == []
    assert doc["links"] == [{"producer": "init", "consumer": "goal", "fact": "(g)"}]
    validate_document(doc)


def test_topk_doc(triline):
    result = top_k(triline, 3)
    graphs = [build_plan_graph(triline, p, extract_causal_links(triline, p))
              for p in result.plans]
    doc = build_topk_doc(result, graphs)
    assert doc["k"] == 3 and doc["exhausted"] is False
    costs = [g["plan"]["cost"] for g in doc["plans"]]
    assert costs == sorted(costs)
    validate_document(doc)


def test_topk_doc_single_and_empty(triline):
    single = TopKResult(plans=top_k(triline, 1).plans, k=1, exhausted=False)
    graphs = [build_plan_graph(triline, p, extract_causal_links(triline, p))
              for p in single.plans]
    doc = build_topk_doc(single, graphs)
    assert len(doc["plans"]) == 1
    empty = TopKResult(plans=(), k=2, exhausted=True)
    doc = build_topk_doc(empty, [])
    assert doc["plans"] == [] and doc["exhausted"] is True
    validate_document(doc)


def test_topk_doc_arity_mismatch(triline):
    result = top_k(triline, 2)
    with pytest.raises(ArityMismatchError):
        build_topk_doc(result, [])


def _belief(probabilities: dict[str, float], count=0, degenerate=False) -> BeliefState:
    entries = tuple(
        HypothesisBelief(id=k, posterior=v, complying_cost=1,
                         unconstrained_cost=1, provenance=None)
        for k, v in probabilities.items())
    return BeliefState(entries=entries, observation_count=count,
                       degenerate=degenerate)


def test_snapshot_uniform_nine():
    belief = _belief({f"h{i}": 1 / 9 for i in range(9)})
    snap = snapshot_beliefs(belief, 5000)
    assert len(snap["entries"]) == 9
    assert all(e["probability"] == pytest.approx(1 / 9) for e in snap["entries"])
    validate_document(snap)


def test_snapshot_degenerate_flag():
    snap = snapshot_beliefs(_belief({"x": 0.5, "y": 0.5}, degenerate=True), 0)
    assert snap["degenerate"] is True
    validate_document(snap)


def test_snapshot_roundtrip(triline):
    snap = snapshot_beliefs(_belief({"x": 1.0}), 123)
    assert parse_document(serialize(snap)) == snap


def test_timeline_sampling_counts():
    snaps = [snapshot_beliefs(_belief({"x": 1.0}, count=i), t)
             for i, t in enumerate([0, 90_000, 300_000, 540_000])]
    # ten minutes of session, one-minute interval -> 11 ticks
    snaps.append(snapshot_beliefs(_belief({"x": 1.0}, count=4), 600_000))
    timeline = sample_timeline(snaps, 60_000, "s")
    assert len(timeline["snapshots"]) == 11
    validate_document(timeline)


def test_timeline_repeats_latest_between_updates():
    s0 = snapshot_beliefs(_belief({"x": 1.0}, count=0), 0)
    s1 = snapshot_beliefs(_belief({"x": 1.0}, count=1), 2500)
    timeline = sample_timeline([s0, s1], 1000, "s")
    picked = [entry["snapshot"]["observation_count"] for entry in timeline["snapshots"]]
    assert picked == [0, 0, 0]  # ticks 0, 1000, 2000 all precede the update


def test_timeline_duration_zero():
    snap = snapshot_beliefs(_belief({"x": 1.0}), 42)
    timeline = sample_timeline([snap], 1000, "s")
    assert len(timeline["snapshots"]) == 1


def test_timeline_empty_session():
    with pytest.raises(EmptySessionError):
        sample_timeline([], 1000, "s")


def test_documents_serialize_roundtrip(triline, triline_plan, triline_links):
    report = relevance(triline, triline_plan)
    doc = build_plan_graph(triline, triline_plan, triline_links, relevance=report)
    assert parse_document(serialize(doc)) == doc
