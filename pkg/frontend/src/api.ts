import type { AnalyzeResponse, ErrorPayload, ExecuteResponse } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Gateway error with the server's machine-readable code attached. */
export class ApiError extends Error {
  readonly payload: ErrorPayload;
  readonly status: number;

  constructor(status: number, payload: ErrorPayload) {
    super(payload.message ?? `request failed (${status})`);
    this.status = status;
    this.payload = payload;
  }

  get code(): string {
    return this.payload.code;
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const error: ErrorPayload = body?.error ?? {
      code: "http_error",
      message: `request failed (${response.status})`,
    };
    throw new ApiError(response.status, error);
  }
  return body as T;
}

export class GatewayClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike,
  ) {}

  analyze(query: string): Promise<AnalyzeResponse> {
    return this.fetchFn(`${this.baseUrl}/api/analyze`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ query }),
    }).then((r) => unwrap<AnalyzeResponse>(r));
  }

  execute(
    query: string,
    bindings: Record<string, string>,
  ): Promise<ExecuteResponse> {
    return this.fetchFn(`${this.baseUrl}/api/execute`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ query, bindings }),
    }).then((r) => unwrap<ExecuteResponse>(r));
  }
}
