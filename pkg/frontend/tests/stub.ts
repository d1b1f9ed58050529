/**
 * Mock server: replays recorded fixture payloads through a fetch stub.
 * Any request outside the route table throws, which doubles as the
 * "the UI issues only documented API calls" check.
 */

export interface StubOptions {
  status?: number;
  /** Exact JSON request body this route answers (for POST routes). */
  requestBody?: string;
  /** Delay before responding; aborting during the delay rejects. */
  delayMs?: number;
}

interface StubRoute extends StubOptions {
  body: unknown;
}

export interface RecordedRequest {
  method: string;
  url: string;
  body: string | null;
}

function routeKey(method: string, url: string, body?: string): string {
  return body === undefined ? `${method} ${url}` : `${method} ${url} ${body}`;
}

export class FetchStub {
  readonly requests: RecordedRequest[] = [];
  private readonly routes = new Map<string, StubRoute>();
  private readonly realFetch = globalThis.fetch;

  route(method: string, url: string, body: unknown, options: StubOptions = {}): void {
    this.routes.set(routeKey(method, url, options.requestBody), { body, ...options });
  }

  install(): void {
    globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = typeof input === "string" ? input : input.toString();
      const method = init?.method ?? "GET";
      const body = typeof init?.body === "string" ? init.body : null;
      this.requests.push({ method, url, body });

      const route =
        (body !== null ? this.routes.get(routeKey(method, url, body)) : undefined) ??
        this.routes.get(routeKey(method, url));
      if (route === undefined) {
        throw new Error(`unexpected request: ${method} ${url}${body ? ` body=${body}` : ""}`);
      }
      if (route.delayMs) {
        await new Promise<void>((resolve, reject) => {
          const timer = setTimeout(resolve, route.delayMs);
          init?.signal?.addEventListener("abort", () => {
            clearTimeout(timer);
            reject(new DOMException("The operation was aborted.", "AbortError"));
          });
        });
      }
      if (init?.signal?.aborted) {
        throw new DOMException("The operation was aborted.", "AbortError");
      }
      return new Response(JSON.stringify(route.body), {
        status: route.status ?? 200,
        headers: { "content-type": "application/json" },
      });
    }) as typeof fetch;
  }

  uninstall(): void {
    globalThis.fetch = this.realFetch;
  }
}
