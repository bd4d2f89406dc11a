// Dashboard view state. Selection indices are clamped to the loaded
// documents; graying and palette are pure display toggles.

import type { PaletteName } from "./palette.js";
import type { SessionTimeline, TopKDoc } from "./types.js";

export class ViewState {
  sessionId: string | null = null;
  pollIntervalMs = 1000;
  selectedPlan = 0;
  selectedStep: number | null = null;
  grayingEnabled = true;
  palette: PaletteName = "default";
  scrubPosition = 0;

  selectPlan(doc: TopKDoc | null, index: number): number {
    const n = doc ? doc.plans.length : 0;
    this.selectedPlan = n === 0 ? 0 : Math.min(Math.max(index, 0), n - 1);
    this.selectedStep = null;
    return this.selectedPlan;
  }

  selectStep(stepCount: number, step: number): number | null {
    if (step < 0 || step >= stepCount) {
      console.warn(`step ${step} out of range (plan has ${stepCount} steps)`);
      return this.selectedStep;
    }
    this.selectedStep = step;
    return step;
  }

  scrubTo(timeline: SessionTimeline | null, position: number): number {
    const n = timeline ? timeline.snapshots.length : 0;
    this.scrubPosition = n === 0 ? 0 : Math.min(Math.max(position, 0), n - 1);
    return this.scrubPosition;
  }
}
