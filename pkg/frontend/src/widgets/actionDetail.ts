// Per-action drill-down: the conditions an action carries (colored by
// role) and the causal links flowing into and out of the step. Grayed
// condition nodes render at reduced opacity while the graying toggle is on.

import { GRAYED_OPACITY, roleColor, type PaletteName } from "../palette.js";
import type { PlanGraphDoc } from "../types.js";

export interface ActionDetailOptions {
  grayingEnabled: boolean;
  palette?: PaletteName;
}

export function renderActionDetail(
  container: HTMLElement,
  doc: PlanGraphDoc,
  step: number,
  options: ActionDetailOptions = { grayingEnabled: true },
): void {
  if (step < 0 || step >= doc.actions.length) {
    console.warn(`action detail: step ${step} out of range`);
    return;
  }
  container.textContent = "";
  container.classList.add("action-detail");

  const action = doc.actions[step];
  const heading = document.createElement("h3");
  heading.textContent = `${action.label} (step ${action.step}, cost ${action.cost})`;
  container.appendChild(heading);

  const conditions = document.createElement("div");
  conditions.className = "condition-nodes";
  for (const node of doc.conditions.filter((c) => c.step === step)) {
    const chip = document.createElement("span");
    chip.className = `condition-chip role-${node.role}`;
    chip.textContent = node.fact;
    chip.style.backgroundColor = roleColor(node.role, options.palette);
    chip.dataset.role = node.role;
    if (node.grayed !== undefined) {
      chip.dataset.grayed = String(node.grayed);
    }
    if (options.grayingEnabled && node.grayed) {
      chip.style.opacity = GRAYED_OPACITY;
      chip.classList.add("dimmed");
    }
    conditions.appendChild(chip);
  }
  container.appendChild(conditions);

  const links = document.createElement("div");
  links.className = "causal-links";
  const incoming = doc.links.filter((l) => l.consumer === step);
  const outgoing = doc.links.filter((l) => l.producer === step);
  const describe = (endpoint: number | "init" | "goal") =>
    typeof endpoint === "number" ? doc.actions[endpoint].label : endpoint;

  const inList = document.createElement("ul");
  inList.className = "links-in";
  for (const link of incoming) {
    const item = document.createElement("li");
    item.textContent = `${link.fact} from ${describe(link.producer)}`;
    inList.appendChild(item);
  }
  const outList = document.createElement("ul");
  outList.className = "links-out";
  for (const link of outgoing) {
    const item = document.createElement("li");
    item.textContent = `${link.fact} to ${describe(link.consumer)}`;
    outList.appendChild(item);
  }
  links.append(inList, outList);
  container.appendChild(links);
}

// Whole-model condition panel (shown with explanation documents): every
// model condition, dimmed when the explanation marked it ignorable.
export function renderModelPanel(
  container: HTMLElement,
  doc: PlanGraphDoc,
  options: ActionDetailOptions = { grayingEnabled: true },
): void {
  container.textContent = "";
  container.classList.add("model-panel");
  if (!doc.model_panel) {
    return;
  }
  for (const unit of doc.model_panel) {
    const row = document.createElement("div");
    row.className = "panel-unit";
    row.textContent = `${unit.kind} ${unit.action ?? "-"} ${unit.fact}`;
    row.dataset.grayed = String(unit.grayed);
    if (options.grayingEnabled && unit.grayed) {
      row.style.opacity = GRAYED_OPACITY;
      row.classList.add("dimmed");
    }
    container.appendChild(row);
  }
}
