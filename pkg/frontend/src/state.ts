/** View-state machine for the explorer.
 *
 * Three display modes on top of the base picture: a solution overlay
 * (optionally narrowed to one critical attack set), and manual what-if
 * suspension. The two are mutually exclusive by construction: picking
 * a solution drops any manual suspensions, touching an edge drops the
 * solution selection. Clearing the last suspension falls back to base.
 */

import type { SolutionsDoc } from "./types";

export type Semantics = "grounded" | "complete" | "stable" | "preferred";

export type Edge = readonly [string, string];

export type Mode =
  | { kind: "base" }
  | { kind: "solution"; solution: number; delta: number | null }
  | { kind: "whatif"; suspended: readonly Edge[] };

export interface ViewState {
  session: string | null;
  semantics: Semantics;
  mode: Mode;
  hover: string | null;
}

export class StateError extends Error {}

export const initialState: ViewState = {
  session: null,
  semantics: "stable",
  mode: { kind: "base" },
  hover: null,
};

export function openSession(state: ViewState, session: string): ViewState {
  return { ...state, session, mode: { kind: "base" }, hover: null };
}

export function resetToBase(state: ViewState): ViewState {
  return { ...state, mode: { kind: "base" } };
}

export function selectSemantics(state: ViewState, semantics: Semantics): ViewState {
  return { ...state, semantics, mode: { kind: "base" } };
}

export function selectSolution(state: ViewState, solution: number): ViewState {
  if (!Number.isInteger(solution) || solution < 0) {
    throw new StateError(`bad solution index: ${solution}`);
  }
  return { ...state, mode: { kind: "solution", solution, delta: null } };
}

export function selectDelta(state: ViewState, delta: number): ViewState {
  if (state.mode.kind !== "solution") {
    throw new StateError("a critical set needs a selected solution");
  }
  if (!Number.isInteger(delta) || delta < 0) {
    throw new StateError(`bad critical set index: ${delta}`);
  }
  return { ...state, mode: { ...state.mode, delta } };
}

export function clearDelta(state: ViewState): ViewState {
  if (state.mode.kind !== "solution") {
    return state;
  }
  return { ...state, mode: { ...state.mode, delta: null } };
}

function sameEdge(a: Edge, b: Edge): boolean {
  return a[0] === b[0] && a[1] === b[1];
}

export function toggleSuspension(state: ViewState, edge: Edge): ViewState {
  const current = state.mode.kind === "whatif" ? state.mode.suspended : [];
  const without = current.filter((e) => !sameEdge(e, edge));
  const suspended =
    without.length === current.length ? [...current, edge] : without;
  if (suspended.length === 0) {
    return { ...state, mode: { kind: "base" } };
  }
  return { ...state, mode: { kind: "whatif", suspended } };
}

export function setHover(state: ViewState, id: string | null): ViewState {
  return { ...state, hover: id };
}

export function exportEnabled(state: ViewState): boolean {
  return state.session !== null;
}

export function switcherNotice(solutions: SolutionsDoc | null): string | null {
  if (solutions === null || solutions.count === 0) {
    return "no stable solutions";
  }
  return null;
}
