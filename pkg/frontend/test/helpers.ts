import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

/** Load one of the frozen service responses captured by capture_fixtures.py. */
export function fixture<T = any>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf8")) as T;
}

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

/**
 * fetch stand-in that records every call and answers from a handler.
 * The handler returns the JSON payload (or a Response for error cases).
 */
export function fakeFetch(
  handler: (url: string, init?: RequestInit) => unknown,
): { fetch: (url: string, init?: RequestInit) => Promise<Response>; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  return {
    calls,
    fetch: async (url, init) => {
      calls.push({
        url,
        method: init?.method ?? "GET",
        body: typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
      });
      const out = handler(url, init);
      if (out instanceof Response) return out;
      return new Response(JSON.stringify(out ?? {}), {
        status: 200,
        headers: { "content-type": "application/json" },
      });
    },
  };
}
