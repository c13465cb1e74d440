// Typed client for the session API.  Every request is appended to `log`
// so tests can assert that each tree change round-tripped to the server.

import type {
  MovesPayload,
  PhantomGoalRequest,
  SessionSummary,
  TreePayload,
} from './types.js';

export interface LoggedRequest {
  method: 'GET' | 'POST';
  path: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

export class ApiClient {
  readonly log: LoggedRequest[] = [];

  constructor(private readonly base: string = '') {}

  private async request<T>(method: 'GET' | 'POST', path: string, body?: unknown): Promise<T> {
    this.log.push({ method, path });
    const response = await fetch(this.base + path, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const payload = (await response.json()) as { detail?: unknown };
        if (payload.detail !== undefined) detail = JSON.stringify(payload.detail);
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    const type = response.headers.get('content-type') ?? '';
    if (type.includes('application/json')) {
      return (await response.json()) as T;
    }
    return (await response.text()) as T;
  }

  getSession(): Promise<SessionSummary> {
    return this.request('GET', '/api/session');
  }

  getTree(): Promise<TreePayload> {
    return this.request('GET', '/api/tree');
  }

  getMoves(nodeId: string): Promise<MovesPayload> {
    return this.request('GET', `/api/nodes/${nodeId}/moves`);
  }

  applyMove(nodeId: string, moveIndex: number, expectedHash: string): Promise<{ hash: string; children: string[] }> {
    return this.request('POST', `/api/nodes/${nodeId}/apply`, { moveIndex, expectedHash });
  }

  formalize(nodeId: string, expectedHash: string): Promise<{ hash: string }> {
    return this.request('POST', `/api/nodes/${nodeId}/formalize`, { expectedHash });
  }

  recordCompleteness(
    nodeId: string,
    answer: 'complete' | 'incomplete',
    rationale: string,
    expectedHash: string,
  ): Promise<{ hash: string }> {
    return this.request('POST', `/api/nodes/${nodeId}/completeness`, {
      answer,
      rationale,
      expectedHash,
    });
  }

  addRule(line: string, expectedHash: string): Promise<{ hash: string }> {
    return this.request('POST', '/api/rules', { line, expectedHash });
  }

  insertPhantom(body: PhantomGoalRequest, expectedHash: string): Promise<{ hash: string }> {
    return this.request('POST', '/api/goals/phantom', { ...body, expectedHash });
  }

  /** Raw export bytes; the report stays unparsed for byte-exact previews. */
  async export(format: 'props' | 'report'): Promise<string> {
    const path = `/api/export?format=${format}`;
    this.log.push({ method: 'GET', path });
    const response = await fetch(this.base + path);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const payload = (await response.json()) as { detail?: unknown };
        if (payload.detail !== undefined) detail = JSON.stringify(payload.detail);
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return response.text();
  }

  mutationCount(): number {
    return this.log.filter((entry) => entry.method === 'POST').length;
  }
}
