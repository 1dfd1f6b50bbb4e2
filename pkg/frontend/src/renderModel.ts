/** Pure translation from a layout document to drawable geometry.
 *
 * Every label, length, class, and position in the output is taken
 * verbatim from the service payload; the only thing added here is
 * pixel spacing. Rows stack bottom-up by layer with the undecided
 * band, when present, as the topmost row.
 */

import { CRITICAL_COLOR, EDGE_STYLE, NODE_FILL, RESOLVED_ALPHA } from "./colors";
import type { StrokeStyle } from "./colors";
import type { EdgeClassValue, LabelValue, LayoutDoc, LengthValue } from "./types";

export const SPACING = { columnWidth: 120, rowHeight: 90, margin: 40 } as const;

export interface RenderNode {
  id: string;
  display: string;
  label: LabelValue;
  length: LengthValue;
  band: boolean;
  layer: number | null;
  row: number;
  column: number;
  x: number;
  y: number;
  fill: string;
  resolved: boolean;
  dashedOutline: boolean;
  tooltip: string | null;
  url: string | null;
}

export interface RenderEdge {
  source: string;
  target: string;
  edgeClass: EdgeClassValue;
  style: StrokeStyle;
  color: string;
  suspended: boolean;
}

export interface RenderModel {
  nodes: RenderNode[];
  edges: RenderEdge[];
  rows: number;
}

export class SchemaError extends Error {}

const LABELS: LabelValue[] = ["in", "out", "undec"];
const CLASSES: EdgeClassValue[] = [
  "primary",
  "secondary",
  "blunder",
  "contested",
  "moot",
];

function demand(condition: boolean, what: string): asserts condition {
  if (!condition) {
    throw new SchemaError(`layout document: ${what}`);
  }
}

function checkShape(doc: LayoutDoc): void {
  demand(doc !== null && typeof doc === "object", "not an object");
  demand(Array.isArray(doc.band), "band must be an array");
  demand(Array.isArray(doc.order), "order must be an array of rows");
  demand(Array.isArray(doc.edges), "edges must be an array");
  demand(Array.isArray(doc.resolved), "resolved must be an array");
  for (const field of ["layers", "display_names", "labels", "lengths"] as const) {
    demand(
      typeof doc[field] === "object" && doc[field] !== null,
      `${field} must be an object`,
    );
  }
  for (const value of Object.values(doc.labels)) {
    demand(LABELS.includes(value), `unknown label ${JSON.stringify(value)}`);
  }
  for (const edge of doc.edges) {
    demand(typeof edge.source === "string", "edge without source");
    demand(typeof edge.target === "string", "edge without target");
    demand(CLASSES.includes(edge.class), `unknown edge class ${JSON.stringify(edge.class)}`);
    demand(typeof edge.suspended === "boolean", "edge without suspended flag");
  }
}

export function buildRenderModel(doc: LayoutDoc): RenderModel {
  checkShape(doc);
  const rows: string[][] = doc.order.map((row) => [...row]);
  if (doc.band.length > 0) {
    rows.push([...doc.band]);
  }
  const resolved = new Set(doc.resolved);
  const nodes: RenderNode[] = [];
  const total = rows.length;
  rows.forEach((members, row) => {
    const band = doc.band.length > 0 && row === total - 1;
    members.forEach((id, column) => {
      const label = doc.labels[id];
      demand(label !== undefined, `no label for ${id}`);
      const isResolved = resolved.has(id);
      const note = doc.annotations[id];
      nodes.push({
        id,
        display: doc.display_names[id] ?? id,
        label,
        length: doc.lengths[id],
        band,
        layer: band ? null : doc.layers[id],
        row,
        column,
        x: SPACING.margin + column * SPACING.columnWidth,
        y: SPACING.margin + (total - 1 - row) * SPACING.rowHeight,
        fill: NODE_FILL[label] + (isResolved ? RESOLVED_ALPHA : ""),
        resolved: isResolved,
        dashedOutline: isResolved,
        tooltip: note ? note.text : null,
        url: note?.url ?? null,
      });
    });
  });
  const edges: RenderEdge[] = doc.edges.map((edge) => ({
    source: edge.source,
    target: edge.target,
    edgeClass: edge.class,
    style: edge.suspended ? "dashed" : EDGE_STYLE[edge.class].style,
    color: edge.suspended ? CRITICAL_COLOR : EDGE_STYLE[edge.class].color,
    suspended: edge.suspended,
  }));
  return { nodes, edges, rows: total };
}

export function bandNodes(model: RenderModel): RenderNode[] {
  return model.nodes.filter((node) => node.band);
}

export function nodeById(model: RenderModel, id: string): RenderNode | undefined {
  return model.nodes.find((node) => node.id === id);
}
