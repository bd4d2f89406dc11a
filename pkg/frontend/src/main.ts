// Browser bootstrap: base-URL setting, session controls, and the widgets.

import { Dashboard } from "./app.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const root = el<HTMLDivElement>("dashboard");
const baseUrl =
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8420";
const dashboard = new Dashboard(root, baseUrl);

const controls = document.getElementById("panel-controls")!;
controls.innerHTML = `
  <label>environment <input id="env-name" value="meeting-room"></label>
  <button id="open-session">open session</button>
  <label>action <input id="obs-action" placeholder="(gather-input chair)"></label>
  <button id="post-obs" disabled>observe</button>
  <label><input type="checkbox" id="graying" checked> gray irrelevant conditions</label>
  <label><input type="checkbox" id="cb-palette"> color-blind palette</label>
  <button id="replay" disabled>replay timeline</button>
  <span id="status"></span>
`;

const status = el<HTMLSpanElement>("status");

el<HTMLButtonElement>("open-session").addEventListener("click", async () => {
  try {
    const sid = await dashboard.openSession(el<HTMLInputElement>("env-name").value);
    status.textContent = `session ${sid}`;
    el<HTMLButtonElement>("post-obs").disabled = false;
    el<HTMLButtonElement>("replay").disabled = false;
  } catch (err) {
    status.textContent = String(err);
  }
});

el<HTMLButtonElement>("post-obs").addEventListener("click", async () => {
  try {
    await dashboard.observe(el<HTMLInputElement>("obs-action").value);
    status.textContent = "observed";
  } catch (err) {
    status.textContent = String(err);
  }
});

el<HTMLInputElement>("graying").addEventListener("change", (event) => {
  dashboard.state.grayingEnabled = (event.target as HTMLInputElement).checked;
});

el<HTMLInputElement>("cb-palette").addEventListener("change", (event) => {
  dashboard.state.palette = (event.target as HTMLInputElement).checked
    ? "colorblind-safe"
    : "default";
});

el<HTMLButtonElement>("replay").addEventListener("click", () => {
  void dashboard.replay(1.0);
});
