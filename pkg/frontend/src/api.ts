import type {
  ConstraintRecord,
  CostEcho,
  CostSpec,
  DiffResult,
  FilterResult,
  JobInfo,
  OptimizeResult,
  Ranking,
  RefineResult,
  SessionSummary,
  TopologyDetail,
  TopologyPage,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

/**
 * Thin client for the exploration service.  Every UI number comes through
 * here; nothing below the wire format is recomputed client-side.
 */
export class Api {
  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async call<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(this.base + path, init);
    if (!res.ok) {
      let detail = res.statusText;
      try {
        const body = await res.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(res.status, detail);
    }
    return res.json() as Promise<T>;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.call<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body ?? {}),
    });
  }

  benchmarks(): Promise<{ benchmarks: string[] }> {
    return this.call("/problems");
  }

  createSession(body: { benchmark: string } | { problem: unknown }): Promise<SessionSummary> {
    return this.post("/sessions", body);
  }

  session(sid: string): Promise<SessionSummary> {
    return this.call(`/sessions/${sid}`);
  }

  enumerate(sid: string, maxClasses?: number): Promise<JobInfo> {
    return this.post(`/sessions/${sid}/enumerate`, maxClasses ? { max_classes: maxClasses } : {});
  }

  job(sid: string, jid: string): Promise<JobInfo> {
    return this.call(`/sessions/${sid}/jobs/${jid}`);
  }

  topologies(sid: string, offset = 0, limit = 100): Promise<TopologyPage> {
    return this.call(`/sessions/${sid}/topologies?offset=${offset}&limit=${limit}`);
  }

  topology(sid: string, index: number): Promise<TopologyDetail> {
    return this.call(`/sessions/${sid}/topologies/${index}`);
  }

  diff(sid: string, a: number, b: number): Promise<DiffResult> {
    return this.call(`/sessions/${sid}/diff?a=${a}&b=${b}`);
  }

  filter(sid: string, constraints: ConstraintRecord[]): Promise<FilterResult> {
    return this.post(`/sessions/${sid}/filter`, { constraints });
  }

  refine(sid: string, index: number, constraints: ConstraintRecord[]): Promise<RefineResult> {
    return this.post(`/sessions/${sid}/topologies/${index}/refine`, { constraints });
  }

  undo(sid: string, index: number): Promise<RefineResult> {
    return this.post(`/sessions/${sid}/topologies/${index}/undo`);
  }

  setCost(sid: string, spec: CostSpec): Promise<CostEcho> {
    return this.call(`/sessions/${sid}/cost`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(spec),
    });
  }

  optimize(sid: string, index: number): Promise<OptimizeResult> {
    return this.post(`/sessions/${sid}/topologies/${index}/optimize`);
  }

  optimizeAll(sid: string): Promise<JobInfo> {
    return this.post(`/sessions/${sid}/optimize`);
  }

  ranking(sid: string): Promise<Ranking> {
    return this.call(`/sessions/${sid}/ranking`);
  }

  layouts(sid: string, index: number): Promise<OptimizeResult> {
    return this.call(`/sessions/${sid}/topologies/${index}/layouts`);
  }
}
