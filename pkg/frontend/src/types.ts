/** Documents exactly as the HTTP service emits them. */

export type LabelValue = "in" | "out" | "undec";

export type EdgeClassValue =
  | "primary"
  | "secondary"
  | "blunder"
  | "contested"
  | "moot";

export type LengthValue = number | "inf";

export interface AnnotationDoc {
  text: string;
  url?: string;
}

export interface LayoutEdgeDoc {
  source: string;
  target: string;
  class: EdgeClassValue;
  suspended: boolean;
}

export interface LayoutDoc {
  layers: Record<string, number>;
  band: string[];
  order: string[][];
  display_names: Record<string, string>;
  labels: Record<string, LabelValue>;
  lengths: Record<string, LengthValue>;
  edges: LayoutEdgeDoc[];
  resolved: string[];
  annotations: Record<string, AnnotationDoc>;
}

export interface GroundedDoc {
  labels: Record<string, LabelValue>;
  lengths: Record<string, LengthValue>;
}

export interface SolutionsDoc {
  semantics: string;
  count: number;
  truncated: boolean;
  solutions: Record<string, LabelValue>[];
}

export interface CriticalSetDoc {
  edges: [string, string][];
  resolution_labels: Record<string, LabelValue>;
}

export interface ExplanationDoc {
  solution: number;
  overlay: { resolved: string[]; labels: Record<string, LabelValue> };
  critical_sets: CriticalSetDoc[];
  truncated: boolean;
}

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
}
