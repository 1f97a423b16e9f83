// Thin client for the evaluation service. A custom fetch can be injected
// for tests; every helper throws on non-2xx with the server's detail text.

import type {
  SimulateResponse,
  SizeResponse,
  SkeletonDoc,
  SkeletonResponse,
  SectionsResponse,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`service error ${status}: ${JSON.stringify(detail)}`);
  }
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch.bind(globalThis),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await res.json();
    if (!res.ok) throw new ApiError(res.status, body.detail ?? body);
    return body as T;
  }

  simulate(
    graph: SkeletonDoc,
    sections: number[],
    source: 'surrogate' | 'oracle' = 'surrogate',
    signal?: AbortSignal,
  ): Promise<SimulateResponse> {
    return this.request<SimulateResponse>('/api/simulate', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ graph, sections, source }),
      signal,
    });
  }

  size(graph: SkeletonDoc): Promise<SizeResponse> {
    return this.request<SizeResponse>('/api/size', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ graph }),
    });
  }

  skeleton(seed: number, stories?: number): Promise<SkeletonResponse> {
    const q = stories === undefined ? '' : `&stories=${stories}`;
    return this.request<SkeletonResponse>(`/api/skeleton?seed=${seed}${q}`);
  }

  sections(): Promise<SectionsResponse> {
    return this.request<SectionsResponse>('/api/sections');
  }
}
