import { describe, expect, it } from "vitest";

import { Api, ApiError } from "../src/api";
import { fakeFetch, fixture } from "./helpers";

describe("request shapes", () => {
  it("hits each endpoint with the right verb, path and body", async () => {
    const { fetch, calls } = fakeFetch(() => ({ survivors: [], ranking: [] }));
    const api = new Api("/api", fetch);

    await api.benchmarks();
    await api.createSession({ benchmark: "tong" });
    await api.session("s1");
    await api.enumerate("s1");
    await api.enumerate("s1", 50);
    await api.job("s1", "j1");
    await api.topologies("s1");
    await api.topologies("s1", 24, 12);
    await api.topology("s1", 3);
    await api.diff("s1", 0, 5);
    await api.filter("s1", [{ type: "bound", var: ["a", "x1"], max: 0 }]);
    await api.refine("s1", 2, [{ type: "bound", var: ["a", "x1"], max: 0 }]);
    await api.undo("s1", 2);
    await api.setCost("s1", { criteria: [{ name: "internal_wall", weight: 1 }] });
    await api.optimize("s1", 4);
    await api.optimizeAll("s1");
    await api.ranking("s1");
    await api.layouts("s1", 4);

    expect(calls.map((c) => [c.method, c.url])).toEqual([
      ["GET", "/api/problems"],
      ["POST", "/api/sessions"],
      ["GET", "/api/sessions/s1"],
      ["POST", "/api/sessions/s1/enumerate"],
      ["POST", "/api/sessions/s1/enumerate"],
      ["GET", "/api/sessions/s1/jobs/j1"],
      ["GET", "/api/sessions/s1/topologies?offset=0&limit=100"],
      ["GET", "/api/sessions/s1/topologies?offset=24&limit=12"],
      ["GET", "/api/sessions/s1/topologies/3"],
      ["GET", "/api/sessions/s1/diff?a=0&b=5"],
      ["POST", "/api/sessions/s1/filter"],
      ["POST", "/api/sessions/s1/topologies/2/refine"],
      ["POST", "/api/sessions/s1/topologies/2/undo"],
      ["PUT", "/api/sessions/s1/cost"],
      ["POST", "/api/sessions/s1/topologies/4/optimize"],
      ["POST", "/api/sessions/s1/optimize"],
      ["GET", "/api/sessions/s1/ranking"],
      ["GET", "/api/sessions/s1/topologies/4/layouts"],
    ]);

    expect(calls[1].body).toEqual({ benchmark: "tong" });
    expect(calls[3].body).toEqual({});
    expect(calls[4].body).toEqual({ max_classes: 50 });
    expect(calls[10].body).toEqual({
      constraints: [{ type: "bound", var: ["a", "x1"], max: 0 }],
    });
    expect(calls[13].body).toEqual({
      criteria: [{ name: "internal_wall", weight: 1 }],
    });
  });

  it("parses recorded payloads through unchanged", async () => {
    const page = fixture("topologies.json");
    const { fetch } = fakeFetch(() => page);
    const api = new Api("", fetch);
    expect(await api.topologies("s1")).toEqual(page);
  });
});

describe("error mapping", () => {
  it("surfaces the service detail string", async () => {
    const { fetch } = fakeFetch(
      () =>
        new Response(JSON.stringify({ detail: "unknown session" }), {
          status: 404,
          statusText: "Not Found",
        }),
    );
    const api = new Api("", fetch);
    const err = await api.session("gone").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.detail).toBe("unknown session");
    expect(String(err)).toContain("unknown session");
  });

  it("falls back to the status text on a non-JSON body", async () => {
    const { fetch } = fakeFetch(
      () => new Response("boom", { status: 502, statusText: "Bad Gateway" }),
    );
    const api = new Api("", fetch);
    const err = await api.ranking("s1").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(502);
    expect(err.detail).toBe("Bad Gateway");
  });

  it("keeps a structured detail out of the message rather than crashing", async () => {
    const { fetch } = fakeFetch(
      () =>
        new Response(JSON.stringify({ detail: [{ loc: ["body"], msg: "bad" }] }), {
          status: 422,
          statusText: "Unprocessable Entity",
        }),
    );
    const api = new Api("", fetch);
    const err = await api.undo("s1", 0).catch((e) => e);
    expect(err.status).toBe(422);
    expect(err.detail).toBe("Unprocessable Entity");
  });
});
