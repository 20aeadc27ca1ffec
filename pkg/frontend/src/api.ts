/** Thin fetch wrapper for the service API; all solves go through here. */

import type {
  CompatibilityOverride,
  ComposeResponse,
  KnapsackResponse,
  ProblemDocument,
  ProblemListEntry,
  StoredProblem,
  TrajectoryResponse,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : `request failed (${status})`);
  }
}

type Fetch = typeof globalThis.fetch;

export class ApiClient {
  constructor(
    private base = "",
    private fetchImpl: Fetch = (...args) => globalThis.fetch(...args),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      throw new ApiError(response.status, body?.detail ?? response.statusText);
    }
    return body as T;
  }

  listProblems(): Promise<{ problems: ProblemListEntry[] }> {
    return this.request("/api/problems");
  }

  getProblem(id: string): Promise<StoredProblem> {
    return this.request(`/api/problems/${id}`);
  }

  putProblem(id: string, revision: number, document: ProblemDocument): Promise<{ id: string; revision: number }> {
    return this.request(`/api/problems/${id}`, {
      method: "PUT",
      body: JSON.stringify({ revision, document }),
    });
  }

  schema(): Promise<Record<string, unknown>> {
    return this.request("/api/schema");
  }

  compose(id: string, scenario?: string | null, node?: string | null): Promise<ComposeResponse> {
    return this.request(`/api/problems/${id}/compose`, {
      method: "POST",
      body: JSON.stringify({ scenario: scenario ?? null, node: node ?? null }),
    });
  }

  whatif(
    id: string,
    scenario: string | null,
    compatibility: CompatibilityOverride[],
    priorities: Record<string, Record<string, number>> = {},
    node?: string | null,
  ): Promise<WhatIfResponse> {
    return this.request(`/api/problems/${id}/whatif`, {
      method: "POST",
      body: JSON.stringify({ scenario, compatibility, priorities, node: node ?? null }),
    });
  }

  knapsack(id: string, budget: number): Promise<KnapsackResponse> {
    return this.request(`/api/problems/${id}/knapsack`, {
      method: "POST",
      body: JSON.stringify({ budget }),
    });
  }

  trajectory(id: string): Promise<TrajectoryResponse> {
    return this.request(`/api/problems/${id}/trajectory`, {
      method: "POST",
      body: JSON.stringify({}),
    });
  }
}
