// Dashboard wiring: session controls on top, belief widget + observation
// log in the middle, top-k explorer / action detail / model panel below,
// timeline replay at the bottom.

import { ApiClient } from "./api.js";
import { BeliefPoller } from "./poll.js";
import { ViewState } from "./state.js";
import type { TopKDoc } from "./types.js";
import { renderActionDetail, renderModelPanel } from "./widgets/actionDetail.js";
import { renderBeliefWidget } from "./widgets/belief.js";
import { ObservationLog } from "./widgets/obslog.js";
import { renderTimelineReplay } from "./widgets/timeline.js";
import { renderTopkExplorer } from "./widgets/topk.js";

export class Dashboard {
  readonly state = new ViewState();
  readonly api: ApiClient;
  private poller: BeliefPoller | null = null;
  private topkDoc: TopKDoc | null = null;
  private log: ObservationLog;

  private panels: Record<string, HTMLElement> = {};

  constructor(root: HTMLElement, baseUrl: string, fetchFn: typeof fetch = fetch) {
    this.api = new ApiClient(baseUrl, fetchFn);
    for (const name of ["controls", "belief", "obslog", "topk", "detail",
                        "model", "timeline"]) {
      const panel = document.createElement("section");
      panel.id = `panel-${name}`;
      root.appendChild(panel);
      this.panels[name] = panel;
    }
    this.log = new ObservationLog(this.panels.obslog);
    renderBeliefWidget(this.panels.belief, null);
  }

  async openSession(environment: string): Promise<string> {
    const { session, snapshot } = await this.api.createSession(environment);
    this.state.sessionId = session;
    this.log.clear();
    this.poller?.stop();
    this.poller = new BeliefPoller(
      () => this.api.getBeliefs(session),
      (snap) => renderBeliefWidget(this.panels.belief, snap),
      this.state.pollIntervalMs,
    );
    this.poller.accept(snapshot);
    this.poller.start();
    return session;
  }

  async observe(action: string, t: number = Date.now()): Promise<void> {
    if (!this.state.sessionId) {
      throw new Error("no active session");
    }
    const snapshot = await this.api.postObservation(this.state.sessionId, {
      t,
      action,
    });
    this.log.append({ t, action });
    this.poller?.accept(snapshot);
  }

  async explore(domain: string, problem: string, k: number): Promise<void> {
    this.topkDoc = await this.api.requestTopK(domain, problem, k);
    renderTopkExplorer(this.panels.topk, this.topkDoc, {
      state: this.state,
      detailContainer: this.panels.detail,
    });
  }

  async explain(domain: string, problem: string): Promise<void> {
    const doc = await this.api.requestExplanation(domain, problem);
    renderModelPanel(this.panels.model, doc, {
      grayingEnabled: this.state.grayingEnabled,
      palette: this.state.palette,
    });
    if (doc.actions.length > 0) {
      renderActionDetail(this.panels.detail, doc, 0, {
        grayingEnabled: this.state.grayingEnabled,
        palette: this.state.palette,
      });
    }
  }

  async replay(intervalSeconds: number): Promise<void> {
    if (!this.state.sessionId) {
      throw new Error("no active session");
    }
    const timeline = await this.api.getTimeline(this.state.sessionId, intervalSeconds);
    renderTimelineReplay(this.panels.timeline, timeline, this.state,
                         this.panels.belief);
  }

  stop(): void {
    this.poller?.stop();
  }
}
