/** Palette shared with the DOT export so screen and file agree. */

import type { EdgeClassValue, LabelValue } from "./types";

export const NODE_FILL: Record<LabelValue, string> = {
  in: "#4C8BF5",
  out: "#F5A94C",
  undec: "#F5E64C",
};

// Resolved overlay nodes keep their solution color at reduced opacity.
export const RESOLVED_ALPHA = "66";

export const CRITICAL_COLOR = "#D62828";
export const NEUTRAL_EDGE = "#9E9E9E";
export const CONTESTED_EDGE = "#B59F00";

export type StrokeStyle = "solid" | "dashed" | "dotted";

export const EDGE_STYLE: Record<
  EdgeClassValue,
  { style: StrokeStyle; color: string }
> = {
  primary: { style: "solid", color: NODE_FILL.in },
  secondary: { style: "dashed", color: NODE_FILL.in },
  blunder: { style: "dotted", color: NEUTRAL_EDGE },
  contested: { style: "solid", color: CONTESTED_EDGE },
  moot: { style: "dashed", color: NEUTRAL_EDGE },
};
