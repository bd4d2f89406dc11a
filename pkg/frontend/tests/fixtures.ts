// Frozen documents in exactly the service's wire shape (the live test
// guards against drift).

import type {
  BeliefSnapshot,
  PlanGraphDoc,
  SessionTimeline,
  TopKDoc,
} from "../src/types.js";

export function planGraphAB(): PlanGraphDoc {
  return {
    doc_version: "1",
    kind: "plan_graph",
    plan: { steps: ["(a)", "(b)"], cost: 2 },
    actions: [
      { step: 0, label: "(a)", cost: 1 },
      { step: 1, label: "(b)", cost: 1 },
    ],
    conditions: [
      { step: 0, fact: "(p)", role: "precondition" },
      { step: 0, fact: "(q)", role: "add" },
      { step: 1, fact: "(q)", role: "precondition" },
      { step: 1, fact: "(r)", role: "add" },
    ],
    links: [
      { producer: "init", consumer: 0, fact: "(p)" },
      { producer: 0, consumer: 1, fact: "(q)" },
      { producer: 1, consumer: "goal", fact: "(r)" },
    ],
    init: [{ fact: "(p)" }],
    goal: ["(r)"],
  };
}

function planGraphOf(steps: string[], costs: number[]): PlanGraphDoc {
  return {
    doc_version: "1",
    kind: "plan_graph",
    plan: { steps, cost: costs.reduce((a, b) => a + b, 0) },
    actions: steps.map((label, step) => ({ step, label, cost: costs[step] })),
    conditions: [],
    links: [],
    init: [{ fact: "(p)" }],
    goal: ["(r)"],
  };
}

export function topk3(): TopKDoc {
  return {
    doc_version: "1",
    kind: "topk",
    k: 3,
    exhausted: false,
    plans: [
      planGraphAB(),
      planGraphOf(["(c)"], [3]),
      planGraphOf(["(a)", "(a)", "(b)"], [1, 1, 1]),
    ],
  };
}

// Explanation document for plan [a b] against the empty model: 3 relevant
// units, 4 grayed; of the plan's own nodes exactly PRE(a, p) is grayed.
export function explanationDoc(): PlanGraphDoc {
  const doc = planGraphAB();
  doc.conditions = [
    { step: 0, fact: "(p)", role: "precondition", grayed: true },
    { step: 0, fact: "(q)", role: "add", grayed: false },
    { step: 1, fact: "(q)", role: "precondition", grayed: false },
    { step: 1, fact: "(r)", role: "add", grayed: false },
  ];
  doc.init = [{ fact: "(p)", grayed: true }];
  doc.relevance = {
    total: 7,
    relevant: [
      { kind: "PRE", action: "(b)", fact: "(q)" },
      { kind: "ADD", action: "(a)", fact: "(q)" },
      { kind: "ADD", action: "(b)", fact: "(r)" },
    ],
    grayed: [
      { kind: "PRE", action: "(a)", fact: "(p)" },
      { kind: "PRE", action: "(c)", fact: "(p)" },
      { kind: "ADD", action: "(c)", fact: "(r)" },
      { kind: "INIT", action: null, fact: "(p)" },
    ],
  };
  doc.model_panel = [
    { kind: "ADD", action: "(a)", fact: "(q)", grayed: false },
    { kind: "ADD", action: "(b)", fact: "(r)", grayed: false },
    { kind: "ADD", action: "(c)", fact: "(r)", grayed: true },
    { kind: "INIT", action: null, fact: "(p)", grayed: true },
    { kind: "PRE", action: "(a)", fact: "(p)", grayed: true },
    { kind: "PRE", action: "(b)", fact: "(q)", grayed: false },
    { kind: "PRE", action: "(c)", fact: "(p)", grayed: true },
  ];
  return doc;
}

export function snapshot(
  probabilities: Record<string, number>,
  observationCount = 0,
  timestamp = 1_000_000,
  degenerate = false,
): BeliefSnapshot {
  return {
    doc_version: "1",
    kind: "belief_snapshot",
    timestamp,
    observation_count: observationCount,
    degenerate,
    exact: true,
    entries: Object.entries(probabilities).map(([id, probability]) => ({
      id,
      probability,
      provenance: { steps: ["(a)", "(b)"], cost: 2 },
    })),
  };
}

export function timeline11(): SessionTimeline {
  const snapshots = [];
  for (let j = 0; j <= 10; j++) {
    snapshots.push({
      tick: 1_000_000 + j * 60_000,
      snapshot: snapshot({ "reach-r": 0.5, "reach-q": 0.5 }, Math.min(j, 3),
                         1_000_000 + j * 60_000),
    });
  }
  return {
    doc_version: "1",
    kind: "session_timeline",
    session: "fixture",
    interval_ms: 60_000,
    snapshots,
  };
}
