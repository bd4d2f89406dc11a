// Poll loop: at most one in-flight request; responses carrying an older
// observation count than one already rendered are discarded as stale.

import type { BeliefSnapshot } from "./types.js";

export class BeliefPoller {
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;
  private lastCount = -1;

  constructor(
    private fetchSnapshot: () => Promise<BeliefSnapshot>,
    private onSnapshot: (snapshot: BeliefSnapshot) => void,
    public intervalMs = 1000,
  ) {}

  // Applies freshness filtering; returns whether the snapshot was accepted.
  accept(snapshot: BeliefSnapshot): boolean {
    if (snapshot.observation_count < this.lastCount) {
      return false; // stale response from an overtaken poll
    }
    this.lastCount = snapshot.observation_count;
    this.onSnapshot(snapshot);
    return true;
  }

  async tick(): Promise<void> {
    if (this.inFlight) {
      return;
    }
    this.inFlight = true;
    try {
      this.accept(await this.fetchSnapshot());
    } catch {
      // transient poll errors are dropped; the next tick retries
    } finally {
      this.inFlight = false;
    }
  }

  start(): void {
    if (this.timer !== null) {
      return;
    }
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
