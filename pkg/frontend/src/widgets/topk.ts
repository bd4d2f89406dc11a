// Top-K explorer: one tab per alternative plan, ordered as delivered
// (non-decreasing cost); selecting an action inside a plan opens the
// action-detail panel.

import type { ViewState } from "../state.js";
import type { TopKDoc } from "../types.js";
import { renderActionDetail } from "./actionDetail.js";

export interface TopkExplorerOptions {
  state: ViewState;
  detailContainer?: HTMLElement;
}

export function renderTopkExplorer(
  container: HTMLElement,
  doc: TopKDoc | null,
  options: TopkExplorerOptions,
): void {
  container.textContent = "";
  container.classList.add("topk-explorer");

  if (!doc || doc.plans.length === 0) {
    const empty = document.createElement("div");
    empty.className = "empty-state";
    empty.textContent = "no plans";
    container.appendChild(empty);
    return;
  }

  if (doc.exhausted) {
    const badge = document.createElement("span");
    badge.className = "exhausted-badge";
    badge.textContent = `plan space exhausted at ${doc.plans.length} of ${doc.k}`;
    container.appendChild(badge);
  }

  const state = options.state;
  state.selectPlan(doc, state.selectedPlan);

  const tabs = document.createElement("div");
  tabs.className = "topk-tabs";
  tabs.setAttribute("role", "tablist");
  doc.plans.forEach((plan, index) => {
    const tab = document.createElement("button");
    tab.className = "topk-tab";
    tab.setAttribute("role", "tab");
    tab.dataset.planIndex = String(index);
    tab.textContent = `plan ${index + 1} · cost ${plan.plan.cost}`;
    tab.setAttribute("aria-selected", String(index === state.selectedPlan));
    tab.addEventListener("click", () => {
      state.selectPlan(doc, index);
      renderTopkExplorer(container, doc, options);
    });
    tabs.appendChild(tab);
  });
  container.appendChild(tabs);

  const selected = doc.plans[state.selectedPlan];
  const body = document.createElement("div");
  body.className = "topk-plan";
  const steps = document.createElement("ol");
  steps.className = "plan-steps";
  selected.actions.forEach((action) => {
    const item = document.createElement("li");
    const button = document.createElement("button");
    button.className = "action-node";
    button.textContent = `${action.label} (cost ${action.cost})`;
    button.dataset.step = String(action.step);
    button.addEventListener("click", () => {
      const step = state.selectStep(selected.actions.length, action.step);
      if (step !== null && options.detailContainer) {
        renderActionDetail(options.detailContainer, selected, step, {
          grayingEnabled: state.grayingEnabled,
          palette: state.palette,
        });
      }
    });
    item.appendChild(button);
    steps.appendChild(item);
  });
  body.appendChild(steps);
  container.appendChild(body);
}
