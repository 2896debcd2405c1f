import type { FoilChangeDoc, FoilHistoryEntry, MetricsDoc, SessionDoc } from "./types";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GatewayError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

// Thin typed wrapper over the gateway HTTP API. Every mutation returns the
// gateway's own payload; nothing is computed client-side.
export class GatewayClient {
  constructor(private baseUrl: string, private fetchFn: FetchLike = fetch.bind(globalThis)) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await res.json();
    if (!res.ok) {
      throw new GatewayError(res.status, payload.error ?? res.statusText);
    }
    return payload as T;
  }

  listScenarios(): Promise<{ scenarios: string[] }> {
    return this.request("GET", "/scenarios");
  }

  createSession(scenario: string): Promise<SessionDoc> {
    return this.request("POST", "/sessions", { scenario });
  }

  getSession(id: string): Promise<SessionDoc> {
    return this.request("GET", `/sessions/${id}`);
  }

  postFoil(id: string, changes: FoilChangeDoc[]): Promise<FoilHistoryEntry> {
    return this.request("POST", `/sessions/${id}/foils`, changes);
  }

  postJudgment(id: string, verdict: string): Promise<SessionDoc> {
    return this.request("POST", `/sessions/${id}/judgment`, { verdict });
  }

  patchDomain(id: string, site: string, value: number): Promise<SessionDoc> {
    return this.request("PATCH", `/sessions/${id}/domain`, { site, value });
  }

  finalize(id: string, verdict: string): Promise<MetricsDoc> {
    return this.request("POST", `/sessions/${id}/finalize`, { verdict });
  }
}
