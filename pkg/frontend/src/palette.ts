// Role -> color. Default palette per the plan-graph convention
// (preconditions blue, add effects green, delete effects red); an
// alternate color-blind-safe palette sits behind a setting.

import type { Role } from "./types.js";

export type PaletteName = "default" | "colorblind-safe";

const PALETTES: Record<PaletteName, Record<Role, string>> = {
  default: {
    precondition: "#2b6cb0", // blue
    add: "#2f855a", // green
    delete: "#c53030", // red
  },
  "colorblind-safe": {
    // Okabe-Ito: blue / bluish green / vermillion
    precondition: "#0072b2",
    add: "#009e73",
    delete: "#d55e00",
  },
};

export function roleColor(role: Role, palette: PaletteName = "default"): string {
  return PALETTES[palette][role];
}

export const GRAYED_OPACITY = "0.25";
