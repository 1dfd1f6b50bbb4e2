import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf8");
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixture(name)) as T;
}

export interface Route {
  body: string;
  status?: number;
  contentType?: string;
}

export interface Recorded {
  url: string;
  init?: RequestInit;
}

/** Replay canned responses keyed by full URL, recording every request. */
export function fakeFetch(
  routes: Record<string, Route>,
  log: Recorded[] = [],
): FetchLike {
  return async (url, init) => {
    log.push({ url, init });
    if (init?.signal?.aborted) {
      throw new DOMException("aborted", "AbortError");
    }
    const route = routes[url];
    if (!route) {
      throw new Error(`no route for ${url}`);
    }
    return new Response(route.body, {
      status: route.status ?? 200,
      headers: { "content-type": route.contentType ?? "application/json" },
    });
  };
}

export interface DeferredCall {
  url: string;
  resolve: (response: Response) => void;
  reject: (reason: unknown) => void;
  signal: AbortSignal | null;
}

/** A fetch whose responses the test releases by hand. */
export function deferredFetch(options: { honorAbort?: boolean } = {}) {
  const calls: DeferredCall[] = [];
  const fn: FetchLike = (url, init) =>
    new Promise<Response>((resolve, reject) => {
      if (options.honorAbort !== false) {
        init?.signal?.addEventListener("abort", () =>
          reject(new DOMException("aborted", "AbortError")),
        );
      }
      calls.push({ url, resolve, reject, signal: init?.signal ?? null });
    });
  return { fn, calls };
}

export function jsonResponse(body: string): Response {
  return new Response(body, {
    status: 200,
    headers: { "content-type": "application/json" },
  });
}
