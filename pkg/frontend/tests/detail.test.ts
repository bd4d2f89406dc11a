import { beforeEach, describe, expect, it, vi } from "vitest";

import { roleColor } from "../src/palette.js";
import { renderActionDetail, renderModelPanel } from "../src/widgets/actionDetail.js";
import { explanationDoc, planGraphAB } from "./fixtures.js";

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "";
  container = document.createElement("div");
  document.body.appendChild(container);
});

describe("action detail", () => {
  it("colors conditions by role: preconditions blue, adds green, deletes red", () => {
    renderActionDetail(container, planGraphAB(), 1, { grayingEnabled: false });
    const chips = [...container.querySelectorAll<HTMLElement>(".condition-chip")];
    const byRole = Object.fromEntries(chips.map((c) => [c.dataset.role, c]));
    expect(byRole.precondition.textContent).toBe("(q)");
    expect(byRole.add.textContent).toBe("(r)");
    expect(roleColor("precondition")).toBe("#2b6cb0");
    expect(roleColor("add")).toBe("#2f855a");
    expect(roleColor("delete")).toBe("#c53030");
  });

  it("lists incoming and outgoing causal links", () => {
    renderActionDetail(container, planGraphAB(), 1, { grayingEnabled: false });
    const incoming = [...container.querySelectorAll(".links-in li")];
    const outgoing = [...container.querySelectorAll(".links-out li")];
    expect(incoming.map((l) => l.textContent)).toEqual(["(q) from (a)"]);
    expect(outgoing.map((l) => l.textContent)).toEqual(["(r) to goal"]);
  });

  it("dims exactly the grayed-flagged nodes when graying is on", () => {
    renderActionDetail(container, explanationDoc(), 0, { grayingEnabled: true });
    const chips = [...container.querySelectorAll<HTMLElement>(".condition-chip")];
    const dimmed = chips.filter((c) => c.classList.contains("dimmed"));
    expect(dimmed.map((c) => [c.dataset.role, c.textContent])).toEqual([
      ["precondition", "(p)"],
    ]);
    expect(chips.filter((c) => c.dataset.grayed === "false")
      .every((c) => !c.classList.contains("dimmed"))).toBe(true);
  });

  it("dims nothing with the toggle off, without touching the document", () => {
    const doc = explanationDoc();
    const before = JSON.stringify(doc);
    renderActionDetail(container, doc, 0, { grayingEnabled: false });
    expect(container.querySelectorAll(".dimmed")).toHaveLength(0);
    expect(JSON.stringify(doc)).toBe(before); // pure visual filter
  });

  it("ignores out-of-range steps with a console warning", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    renderActionDetail(container, planGraphAB(), 5, { grayingEnabled: true });
    expect(warn).toHaveBeenCalledOnce();
    expect(container.children).toHaveLength(0);
    warn.mockRestore();
  });

  it("supports the color-blind-safe palette", () => {
    renderActionDetail(container, planGraphAB(), 0, {
      grayingEnabled: false,
      palette: "colorblind-safe",
    });
    expect(roleColor("delete", "colorblind-safe")).toBe("#d55e00");
  });
});

describe("model panel", () => {
  it("dims the grayed model units model-wide (4 of 7 in the fixture)", () => {
    renderModelPanel(container, explanationDoc(), { grayingEnabled: true });
    const rows = [...container.querySelectorAll<HTMLElement>(".panel-unit")];
    expect(rows).toHaveLength(7);
    const dimmed = rows.filter((r) => r.classList.contains("dimmed"));
    expect(dimmed).toHaveLength(4);
    expect(dimmed.every((r) => r.dataset.grayed === "true")).toBe(true);
  });

  it("renders every unit at full opacity with graying off", () => {
    renderModelPanel(container, explanationDoc(), { grayingEnabled: false });
    expect(container.querySelectorAll(".dimmed")).toHaveLength(0);
  });
});
