// Document shapes mirrored from the service's JSON schemas.
// The dashboard performs no inference: everything rendered is a field below.

export type Role = "precondition" | "add" | "delete";

export interface EditUnit {
  kind: "PRE" | "ADD" | "DEL" | "INIT";
  action: string | null;
  fact: string;
}

export interface ConditionNode {
  step: number;
  fact: string;
  role: Role;
  grayed?: boolean;
}

export interface LinkEdge {
  producer: number | "init";
  consumer: number | "goal";
  fact: string;
}

export interface PlanGraphDoc {
  doc_version: string;
  kind: "plan_graph";
  plan: { steps: string[]; cost: number };
  actions: { step: number; label: string; cost: number }[];
  conditions: ConditionNode[];
  links: LinkEdge[];
  init: { fact: string; grayed?: boolean }[];
  goal: string[];
  relevance?: { total: number; relevant: EditUnit[]; grayed: EditUnit[] };
  model_panel?: (EditUnit & { grayed: boolean })[];
}

export interface TopKDoc {
  doc_version: string;
  kind: "topk";
  k: number;
  exhausted: boolean;
  plans: PlanGraphDoc[];
}

export interface ProvenancePlan {
  steps: string[];
  cost: number;
}

export interface BeliefEntry {
  id: string;
  probability: number;
  provenance: ProvenancePlan | null;
}

export interface BeliefSnapshot {
  doc_version: string;
  kind: "belief_snapshot";
  timestamp: number;
  observation_count: number;
  degenerate: boolean;
  exact: boolean;
  entries: BeliefEntry[];
}

export interface TimelineEntry {
  tick: number;
  snapshot: BeliefSnapshot;
}

export interface SessionTimeline {
  doc_version: string;
  kind: "session_timeline";
  session: string;
  interval_ms: number;
  snapshots: TimelineEntry[];
}

export interface ObservationRecord {
  t: number;
  action: string;
}
