// Belief distribution widget: one bar per hypothesis, length proportional
// to its probability, with a provenance button revealing the complying
// plan that justifies the mass.

import type { BeliefSnapshot } from "../types.js";

export interface BeliefWidgetOptions {
  onProvenance?: (hypothesisId: string) => void;
}

export function renderBeliefWidget(
  container: HTMLElement,
  snapshot: BeliefSnapshot | null,
  options: BeliefWidgetOptions = {},
): void {
  container.textContent = "";
  container.classList.add("belief-widget");

  if (!snapshot || snapshot.entries.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "no beliefs yet";
    container.appendChild(empty);
    return;
  }

  if (snapshot.degenerate) {
    const banner = document.createElement("div");
    banner.className = "degenerate-banner";
    banner.textContent =
      "no hypothesis explains the observations; showing the prior";
    container.appendChild(banner);
  }
  if (!snapshot.exact) {
    const note = document.createElement("div");
    note.className = "approximate-note";
    note.textContent = "satisficing costs: probabilities are approximate";
    container.appendChild(note);
  }

  const list = document.createElement("div");
  list.className = "belief-rows";
  list.dataset.observationCount = String(snapshot.observation_count);
  for (const entry of snapshot.entries) {
    const row = document.createElement("div");
    row.className = "belief-row";
    row.dataset.hypothesis = entry.id;

    const label = document.createElement("span");
    label.className = "belief-label";
    label.textContent = entry.id;

    const track = document.createElement("div");
    track.className = "belief-track";
    const bar = document.createElement("div");
    bar.className = "belief-bar";
    bar.style.width = `${(entry.probability * 100).toFixed(1)}%`;
    bar.dataset.probability = String(entry.probability);
    track.appendChild(bar);

    const value = document.createElement("span");
    value.className = "belief-value";
    value.textContent = entry.probability.toFixed(3);

    const provenance = document.createElement("button");
    provenance.className = "provenance-button";
    provenance.textContent = "why?";
    provenance.disabled = entry.provenance === null;
    provenance.addEventListener("click", () => {
      const detail = row.querySelector(".provenance-plan");
      if (detail) {
        detail.remove();
        return;
      }
      const plan = document.createElement("div");
      plan.className = "provenance-plan";
      plan.textContent = entry.provenance
        ? `${entry.provenance.steps.join("  ")}   (cost ${entry.provenance.cost})`
        : "no complying plan";
      row.appendChild(plan);
      options.onProvenance?.(entry.id);
    });

    row.append(label, track, value, provenance);
    list.appendChild(row);
  }
  container.appendChild(list);
}
