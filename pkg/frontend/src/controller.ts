/** Fetch-per-state-change loop with supersession.
 *
 * Every state change refetches the view for the current mode; no
 * client-side caching. A newer request aborts the one in flight, and
 * a stale response that still manages to arrive is dropped, so the
 * last render always reflects the latest state.
 */

import { ApiClient } from "./api";
import { buildRenderModel } from "./renderModel";
import type { RenderModel } from "./renderModel";
import type { ViewState } from "./state";
import type { LayoutDoc } from "./types";

export class ViewSync {
  private inflight: AbortController | null = null;
  private ticket = 0;

  constructor(private readonly client: ApiClient) {}

  /** Layout document for the state's mode, or null when superseded. */
  async fetchView(state: ViewState): Promise<LayoutDoc | null> {
    if (state.session === null) {
      return null;
    }
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    const ticket = ++this.ticket;
    let doc: LayoutDoc;
    try {
      doc = await this.dispatch(state, controller.signal);
    } catch (error) {
      if (controller.signal.aborted) {
        return null;
      }
      throw error;
    }
    return ticket === this.ticket ? doc : null;
  }

  /** fetchView plus the pure render-model translation. */
  async render(state: ViewState): Promise<RenderModel | null> {
    const doc = await this.fetchView(state);
    return doc === null ? null : buildRenderModel(doc);
  }

  private dispatch(state: ViewState, signal: AbortSignal): Promise<LayoutDoc> {
    const session = state.session as string;
    switch (state.mode.kind) {
      case "base":
        return this.client.layout(session, {}, signal);
      case "solution": {
        const { solution, delta } = state.mode;
        return this.client.layout(
          session,
          delta === null ? { solution } : { solution, delta },
          signal,
        );
      }
      case "whatif":
        return this.client.whatIf(session, state.mode.suspended, signal);
    }
  }
}
