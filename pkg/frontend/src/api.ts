// Thin typed client over the service's REST endpoints.
// One base-URL setting; no other backends.

import type {
  BeliefSnapshot,
  ObservationRecord,
  PlanGraphDoc,
  SessionTimeline,
  TopKDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public body: string) {
    super(`HTTP ${status}: ${body}`);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    throw new ApiError(response.status, await response.text());
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => asJson<T>(r));
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchFn(`${this.baseUrl}${path}`).then((r) => asJson<T>(r));
  }

  loadEnvironment(xml: string): Promise<{ environment: string; hypotheses: number }> {
    return this.post("/environments", { xml });
  }

  createSession(environment: string): Promise<{ session: string; snapshot: BeliefSnapshot }> {
    return this.post("/sessions", { environment });
  }

  postObservation(session: string, record: ObservationRecord): Promise<BeliefSnapshot> {
    return this.post(`/sessions/${session}/observations`, record);
  }

  getBeliefs(session: string): Promise<BeliefSnapshot> {
    return this.get(`/sessions/${session}/beliefs`);
  }

  getTimeline(session: string, intervalSeconds: number): Promise<SessionTimeline> {
    return this.get(`/sessions/${session}/timeline?interval=${intervalSeconds}`);
  }

  requestPlan(domain: string, problem: string, mode = "optimal"): Promise<PlanGraphDoc> {
    return this.post("/plan", { domain, problem, mode });
  }

  requestTopK(domain: string, problem: string, k: number): Promise<TopKDoc> {
    return this.post(`/topk?k=${k}`, { domain, problem });
  }

  requestExplanation(domain: string, problem: string, plan?: string[]): Promise<PlanGraphDoc> {
    return this.post("/explain", { domain, problem, plan });
  }
}
