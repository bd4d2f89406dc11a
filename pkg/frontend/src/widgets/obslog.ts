// Observation log: the raw symbolic stream the session has consumed, the
// dashboard's stand-in for raw sensor widgets (sensing happens upstream).

import type { ObservationRecord } from "../types.js";

export class ObservationLog {
  private records: ObservationRecord[] = [];

  constructor(private container: HTMLElement) {
    container.classList.add("observation-log");
    this.render();
  }

  append(record: ObservationRecord): void {
    this.records.push(record);
    this.render();
  }

  clear(): void {
    this.records = [];
    this.render();
  }

  private render(): void {
    this.container.textContent = "";
    if (this.records.length === 0) {
      const empty = document.createElement("div");
      empty.className = "empty-state";
      empty.textContent = "no observations";
      this.container.appendChild(empty);
      return;
    }
    const list = document.createElement("ul");
    for (const record of this.records) {
      const item = document.createElement("li");
      item.textContent = `${new Date(record.t).toISOString()}  ${record.action}`;
      list.appendChild(item);
    }
    this.container.appendChild(list);
  }
}
