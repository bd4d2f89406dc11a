"""Renderer-independent visualization documents.

Builders turn engine results into plain JSON-serializable dicts: plan
graphs (action/condition nodes + causal links), top-k bundles, belief
snapshots and sampled session timelines. Documents carry semantic roles
(precondition/add/delete), never colors or layout -- mapping roles to a
palette is the renderer's job. Every document carries ``doc_version`` and
validates against the schemas shipped in ``xaiplan/schemas/``.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any, Sequence

import jsonschema

from .errors import ArityMismatchError, EmptySessionError, MismatchedLinksError
from .model import CausalLinkSet, GroundedTask, Plan, extract_causal_links
from .recognition import BeliefState
from .reconcile import EditKind, ModelEditUnit, RelevanceReport
from .topk import TopKResult

DOC_VERSION = "1"

ROLE_BY_KIND = {
    EditKind.PRE: "precondition",
    EditKind.ADD: "add",
    EditKind.DEL: "delete",
}

PlanGraphDoc = dict[str, Any]
TopKDoc = dict[str, Any]
BeliefSnapshot = dict[str, Any]
SessionTimeline = dict[str, Any]


def _unit_json(unit: ModelEditUnit, grayed: bool | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "kind": unit.kind.value,
        "action": unit.action,
        "fact": unit.fact,
    }
    if grayed is not None:
        out["grayed"] = grayed
    return out


def build_plan_graph(task: GroundedTask, plan: Plan, links: CausalLinkSet,
                     relevance: RelevanceReport | None = None,
                     include_model_panel: bool | None = None) -> PlanGraphDoc:
    """Plan graph document: one action node per step, one condition node per
    (step, fact, role), causal-link edges, init/goal pseudo-nodes.

    With a relevance report, every condition node carries a `grayed` flag and
    the document grows a whole-model panel (on by default in that case) whose
    entries partition exactly into relevant and grayed units.
    """
    if links != extract_causal_links(task, plan):
        raise MismatchedLinksError("links were not extracted from this plan")
    grayed_units = set(relevance.grayed) if relevance else set()

    actions = []
    conditions = []
    for step, label in enumerate(plan.steps):
        act = task.action(label)
        actions.append({"step": step, "label": label, "cost": act.cost})
        for kind, fact_indices in ((EditKind.PRE, act.pre), (EditKind.ADD, act.add),
                                   (EditKind.DEL, act.delete)):
            for fact in sorted(task.labels_of(fact_indices)):
                node: dict[str, Any] = {
                    "step": step,
                    "fact": fact,
                    "role": ROLE_BY_KIND[kind],
                }
                if relevance is not None:
                    node["grayed"] = ModelEditUnit(kind, label, fact) in grayed_units
                conditions.append(node)

    link_edges = sorted(
        ({"producer": l.producer, "consumer": l.consumer, "fact": l.fact}
         for l in links.links),
        key=lambda e: (str(e["producer"]), str(e["consumer"]), e["fact"]))

    init = []
    for fact in sorted(task.init_labels):
        entry: dict[str, Any] = {"fact": fact}
        if relevance is not None:
            entry["grayed"] = ModelEditUnit(EditKind.INIT, None, fact) in grayed_units
        init.append(entry)

    doc: PlanGraphDoc = {
        "doc_version": DOC_VERSION,
        "kind": "plan_graph",
        "plan": {"steps": list(plan.steps), "cost": plan.cost},
        "actions": actions,
        "conditions": conditions,
        "links": link_edges,
        "init": init,
        "goal": sorted(task.goal_labels),
    }
    if relevance is not None:
        doc["relevance"] = {
            "total": relevance.total,
            "relevant": [_unit_json(u) for u in relevance.relevant],
            "grayed": [_unit_json(u) for u in relevance.grayed],
        }
    if include_model_panel is None:
        include_model_panel = relevance is not None
    if include_model_panel and relevance is not None:
        panel = [_unit_json(u, grayed=False) for u in relevance.relevant]
        panel += [_unit_json(u, grayed=True) for u in relevance.grayed]
        panel.sort(key=lambda u: (u["kind"], u["action"] or "", u["fact"]))
        doc["model_panel"] = panel
    return doc


def build_topk_doc(result: TopKResult, graphs: Sequence[PlanGraphDoc]) -> TopKDoc:
    """Bundle per-plan graphs in result order; k and exhausted pass through."""
    if len(graphs) != len(result.plans):
        raise ArityMismatchError(
            f"{len(result.plans)} plans but {len(graphs)} graphs")
    for plan, graph in zip(result.plans, graphs):
        if graph["plan"]["steps"] != list(plan.steps) or graph["plan"]["cost"] != plan.cost:
            raise ArityMismatchError("graphs do not match the result's plans in order")
    return {
        "doc_version": DOC_VERSION,
        "kind": "topk",
        "k": result.k,
        "exhausted": result.exhausted,
        "plans": list(graphs),
    }


def snapshot_beliefs(belief: BeliefState, t: int) -> BeliefSnapshot:
    """Immutable snapshot of a belief state at timestamp `t` (epoch ms)."""
    entries = []
    for e in belief.entries:
        provenance = None
        if e.provenance is not None:
            provenance = {"steps": list(e.provenance.steps), "cost": e.provenance.cost}
        entries.append({
            "id": e.id,
            "probability": e.posterior,
            "provenance": provenance,
        })
    return {
        "doc_version": DOC_VERSION,
        "kind": "belief_snapshot",
        "timestamp": t,
        "observation_count": belief.observation_count,
        "degenerate": belief.degenerate,
        "exact": belief.exact,
        "entries": entries,
    }


def sample_timeline(snapshots: Sequence[BeliefSnapshot], interval_ms: int,
                    session_id: str = "") -> SessionTimeline:
    """Step-function sampling of a snapshot history.

    Ticks run from the first snapshot's timestamp to the last's at
    `interval_ms` spacing -- floor(duration/interval) + 1 ticks -- and each
    tick carries the latest snapshot at or before it.
    """
    if interval_ms <= 0:
        raise ValueError("interval must be positive")
    if not snapshots:
        raise EmptySessionError("no snapshots to sample")
    ordered = list(snapshots)
    times = [s["timestamp"] for s in ordered]
    if times != sorted(times):
        raise ValueError("snapshot history must be time-ordered")

    t0, t_end = times[0], times[-1]
    ticks = int((t_end - t0) // interval_ms) + 1
    sampled = []
    idx = 0
    for j in range(ticks):
        tick = t0 + j * interval_ms
        while idx + 1 < len(ordered) and times[idx + 1] <= tick:
            idx += 1
        sampled.append({"tick": tick, "snapshot": ordered[idx]})
    return {
        "doc_version": DOC_VERSION,
        "kind": "session_timeline",
        "session": session_id,
        "interval_ms": interval_ms,
        "snapshots": sampled,
    }


# -- serialization and schema validation ------------------------------------------

_SCHEMA_FILES = {
    "plan_graph": "plan_graph.schema.json",
    "topk": "topk.schema.json",
    "belief_snapshot": "belief_snapshot.schema.json",
    "session_timeline": "session_timeline.schema.json",
}

_schema_cache: dict[str, dict] = {}


def schema_for(kind: str) -> dict:
    if kind not in _schema_cache:
        path = resources.files("xaiplan") / "schemas" / _SCHEMA_FILES[kind]
        _schema_cache[kind] = json.loads(path.read_text())
    return _schema_cache[kind]


def validate_document(doc: dict) -> None:
    """Raise jsonschema.ValidationError unless `doc` matches its schema."""
    kind = doc.get("kind")
    if kind not in _SCHEMA_FILES:
        raise jsonschema.ValidationError(f"unknown document kind: {kind!r}")
    jsonschema.validate(doc, schema_for(kind))


def serialize(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True)


def parse_document(text: str) -> dict:
    doc = json.loads(text)
    validate_document(doc)
    return doc
