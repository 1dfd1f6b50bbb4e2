/** Thin typed client over the service HTTP API.
 *
 * The fetch function is injectable so tests can replay captured
 * payloads; every non-2xx response becomes an ApiError carrying the
 * service's {status, code, message} body.
 */

import type {
  ApiErrorBody,
  ExplanationDoc,
  GroundedDoc,
  LayoutDoc,
  SolutionsDoc,
} from "./types";
import type { Edge, Semantics } from "./state";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.status = body.status;
    this.code = body.code;
  }
}

export type UploadFormat = "apx" | "tgf" | "json";

export interface ExplanationOptions {
  candidates?: "failing" | "all-undec";
  maxDelta?: number;
  maxTests?: number;
  maxResults?: number;
}

export interface ViewSelector {
  solution?: number;
  delta?: number;
}

async function toError(response: Response): Promise<ApiError> {
  let body: ApiErrorBody;
  try {
    body = (await response.json()) as ApiErrorBody;
  } catch {
    body = {
      status: response.status,
      code: "bad_response",
      message: `service returned ${response.status} with a non-JSON body`,
    };
  }
  return new ApiError(body);
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request(
    path: string,
    init?: RequestInit,
  ): Promise<Response> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      throw await toError(response);
    }
    return response;
  }

  private async getJson<T>(path: string, signal?: AbortSignal): Promise<T> {
    const response = await this.request(path, { signal });
    return (await response.json()) as T;
  }

  async upload(text: string, format?: UploadFormat): Promise<string> {
    const query = format ? `?format=${format}` : "";
    const response = await this.request(`/frameworks${query}`, {
      method: "POST",
      body: text,
    });
    const body = (await response.json()) as { id: string };
    return body.id;
  }

  grounded(id: string, signal?: AbortSignal): Promise<GroundedDoc> {
    return this.getJson(`/frameworks/${id}/grounded`, signal);
  }

  solutions(
    id: string,
    semantics?: Semantics,
    signal?: AbortSignal,
  ): Promise<SolutionsDoc> {
    const query = semantics ? `?semantics=${semantics}` : "";
    return this.getJson(`/frameworks/${id}/solutions${query}`, signal);
  }

  explanation(
    id: string,
    solution: number,
    options: ExplanationOptions = {},
    signal?: AbortSignal,
  ): Promise<ExplanationDoc> {
    const params = new URLSearchParams();
    if (options.candidates !== undefined) params.set("candidates", options.candidates);
    if (options.maxDelta !== undefined) params.set("maxDelta", String(options.maxDelta));
    if (options.maxTests !== undefined) params.set("maxTests", String(options.maxTests));
    if (options.maxResults !== undefined) {
      params.set("maxResults", String(options.maxResults));
    }
    const query = params.size > 0 ? `?${params.toString()}` : "";
    return this.getJson(
      `/frameworks/${id}/solutions/${solution}/explanation${query}`,
      signal,
    );
  }

  layout(
    id: string,
    selector: ViewSelector = {},
    signal?: AbortSignal,
  ): Promise<LayoutDoc> {
    const params = new URLSearchParams();
    if (selector.solution !== undefined) params.set("solution", String(selector.solution));
    if (selector.delta !== undefined) params.set("delta", String(selector.delta));
    const query = params.size > 0 ? `?${params.toString()}` : "";
    return this.getJson(`/frameworks/${id}/layout${query}`, signal);
  }

  async whatIf(
    id: string,
    suspend: readonly Edge[],
    signal?: AbortSignal,
  ): Promise<LayoutDoc> {
    const response = await this.request(`/frameworks/${id}/what-if`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ suspend: suspend.map((e) => [e[0], e[1]]) }),
      signal,
    });
    return (await response.json()) as LayoutDoc;
  }

  async exportView(
    id: string,
    format: "apx" | "json" | "dot",
    selector: ViewSelector = {},
  ): Promise<string> {
    const params = new URLSearchParams({ format });
    if (selector.solution !== undefined) params.set("solution", String(selector.solution));
    if (selector.delta !== undefined) params.set("delta", String(selector.delta));
    const response = await this.request(
      `/frameworks/${id}/export?${params.toString()}`,
    );
    return response.text();
  }

  async health(): Promise<boolean> {
    try {
      const response = await this.request("/healthz");
      return (await response.text()) === "ok";
    } catch {
      return false;
    }
  }
}
