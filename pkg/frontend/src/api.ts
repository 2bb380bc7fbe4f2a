/** Thin typed client over the session endpoints. Every call resolves to the
 * refreshed snapshot or rejects with the server's error body. */

import type { ApiError, Snapshot } from "./types";

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async call(
    method: "GET" | "POST",
    path: string,
    body?: unknown,
  ): Promise<Snapshot> {
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      const failure: ApiError = {
        status: response.status,
        error: String(payload.error ?? "request failed"),
        snapshot: payload.snapshot,
      };
      throw failure;
    }
    return payload as Snapshot;
  }

  createSession(student: string, condition: string, seed: number): Promise<Snapshot> {
    return this.call("POST", "/sessions", { student, condition, seed });
  }

  getSession(id: string): Promise<Snapshot> {
    return this.call("GET", `/sessions/${id}`);
  }

  submitStep(
    id: string,
    sources: number[],
    rule: string,
    derived: string,
  ): Promise<Snapshot> {
    return this.call("POST", `/sessions/${id}/steps`, { sources, rule, derived });
  }

  requestHint(id: string): Promise<Snapshot> {
    return this.call("POST", `/sessions/${id}/hint`);
  }

  skip(id: string): Promise<Snapshot> {
    return this.call("POST", `/sessions/${id}/skip`);
  }

  restart(id: string): Promise<Snapshot> {
    return this.call("POST", `/sessions/${id}/restart`);
  }

  advance(id: string): Promise<Snapshot> {
    return this.call("POST", `/sessions/${id}/advance`);
  }

  deleteAssertion(id: string, node: number): Promise<Snapshot> {
    return this.call("POST", `/sessions/${id}/assertions/${node}/delete`);
  }
}

export function isApiError(value: unknown): value is ApiError {
  return (
    typeof value === "object" &&
    value !== null &&
    "status" in value &&
    "error" in value
  );
}
