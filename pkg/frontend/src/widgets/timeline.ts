// Timeline replay: a scrubber over the sampled belief history; the belief
// widget re-renders for whichever tick the scrubber sits on.

import type { ViewState } from "../state.js";
import type { SessionTimeline } from "../types.js";
import { renderBeliefWidget } from "./belief.js";

export function renderTimelineReplay(
  container: HTMLElement,
  timeline: SessionTimeline,
  state: ViewState,
  beliefContainer: HTMLElement,
): void {
  container.textContent = "";
  container.classList.add("timeline-replay");

  const n = timeline.snapshots.length;
  const scrub = document.createElement("input");
  scrub.type = "range";
  scrub.className = "timeline-scrubber";
  scrub.min = "0";
  scrub.max = String(n - 1);
  scrub.step = "1";
  scrub.value = String(state.scrubTo(timeline, state.scrubPosition));

  const label = document.createElement("span");
  label.className = "timeline-label";

  const show = (position: number) => {
    const entry = timeline.snapshots[position];
    const offset = (entry.tick - timeline.snapshots[0].tick) / 1000;
    label.textContent =
      `t+${offset.toFixed(0)}s · ${entry.snapshot.observation_count} observations`;
    renderBeliefWidget(beliefContainer, entry.snapshot);
  };

  scrub.addEventListener("input", () => {
    const position = state.scrubTo(timeline, Number(scrub.value));
    show(position);
  });

  container.append(scrub, label);
  show(state.scrubPosition);
}
