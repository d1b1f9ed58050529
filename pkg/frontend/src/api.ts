import type {
  HealthResponse,
  Order,
  PaperResponse,
  ProjectionResponse,
  QuestionsResponse,
  RecommendResponse,
  Scope,
  SearchResponse,
  TopicPapersResponse,
  TopicsResponse,
} from "./types";

/** Scope + COVID toggle; reflected in every scoped request the UI issues. */
export interface ScopeSelection {
  scope: Scope;
  covid: boolean;
}

/** A non-2xx API response, carrying the server's error code verbatim. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }
}

export function isAbortError(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = "error";
  let message = `request failed with status ${response.status}`;
  try {
    const body = (await response.json()) as { error?: { code?: string; message?: string } };
    if (body.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body; keep the status-line message
  }
  throw new ApiError(response.status, code, message);
}

/** Typed client for the JSON API; base URL is configurable, default same-origin. */
export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async get<T>(
    path: string,
    params: Record<string, string>,
    signal?: AbortSignal,
  ): Promise<T> {
    const query = new URLSearchParams(params).toString();
    const url = this.baseUrl + path + (query ? `?${query}` : "");
    return unwrap<T>(await fetch(url, { signal: signal ?? null }));
  }

  private scoped(sel: ScopeSelection): Record<string, string> {
    return { scope: sel.scope, covid: String(sel.covid) };
  }

  health(signal?: AbortSignal): Promise<HealthResponse> {
    return this.get("/health", {}, signal);
  }

  topics(sel: ScopeSelection, filter?: string, signal?: AbortSignal): Promise<TopicsResponse> {
    const params = this.scoped(sel);
    if (filter) params["filter"] = filter;
    return this.get("/topics", params, signal);
  }

  topicPapers(
    sel: ScopeSelection,
    topicId: number,
    order: Order,
    limit?: number,
    signal?: AbortSignal,
  ): Promise<TopicPapersResponse> {
    const params: Record<string, string> = { ...this.scoped(sel), order };
    if (limit !== undefined) params["limit"] = String(limit);
    return this.get(`/topics/${topicId}/papers`, params, signal);
  }

  async recommend(
    sel: ScopeSelection,
    text: string,
    k: number,
    signal?: AbortSignal,
  ): Promise<RecommendResponse> {
    const response = await fetch(this.baseUrl + "/recommend", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text, scope: sel.scope, covid: sel.covid, k }),
      signal: signal ?? null,
    });
    return unwrap<RecommendResponse>(response);
  }

  search(
    sel: ScopeSelection,
    q: string,
    matchAny: boolean,
    signal?: AbortSignal,
  ): Promise<SearchResponse> {
    const params = { ...this.scoped(sel), q, match: matchAny ? "any" : "all" };
    return this.get("/search", params, signal);
  }

  questions(signal?: AbortSignal): Promise<QuestionsResponse> {
    return this.get("/questions", {}, signal);
  }

  projection(sel: ScopeSelection, signal?: AbortSignal): Promise<ProjectionResponse> {
    return this.get("/projection", this.scoped(sel), signal);
  }

  paper(paperId: string, signal?: AbortSignal): Promise<PaperResponse> {
    return this.get(`/papers/${encodeURIComponent(paperId)}`, {}, signal);
  }
}
