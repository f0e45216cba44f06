import { describe, expect, it } from "vitest";
import { createClient } from "./api.js";
import type { FetchLike } from "./api.js";
import { DEFAULT_PARAMS } from "./types.js";

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("createClient", () => {
  it("uploads raw bytes to /images", async () => {
    const calls: { url: string; init?: RequestInit }[] = [];
    const fetchFn: FetchLike = async (url, init) => {
      calls.push({ url, init });
      return jsonResponse(200, { id: "abc", nx: 10, ny: 20 });
    };
    const client = createClient("http://svc", fetchFn);
    const info = await client.uploadImage(new Uint8Array([1, 2, 3]).buffer);
    expect(info).toEqual({ id: "abc", nx: 10, ny: 20 });
    expect(calls[0].url).toBe("http://svc/images");
    expect(calls[0].init?.method).toBe("POST");
    expect(calls[0].init?.headers).toMatchObject({
      "Content-Type": "application/octet-stream",
    });
  });

  it("posts params plus ref_rect to the search endpoint", async () => {
    let seen: { url: string; body: unknown } | null = null;
    const fetchFn: FetchLike = async (url, init) => {
      seen = { url, body: JSON.parse(init?.body as string) };
      return jsonResponse(200, { candidates: [] });
    };
    const client = createClient("http://svc", fetchFn);
    await client.runSearch("abc", { x: 1, y: 2, h: 3, w: 4 }, DEFAULT_PARAMS);
    expect(seen!.url).toBe("http://svc/images/abc/search");
    expect(seen!.body).toEqual({
      ...DEFAULT_PARAMS,
      ref_rect: { x: 1, y: 2, h: 3, w: 4 },
    });
  });

  it("turns error statuses into exceptions with the service detail", async () => {
    const fetchFn: FetchLike = async () =>
      jsonResponse(404, { detail: "unknown image id" });
    const client = createClient("http://svc", fetchFn);
    await expect(
      client.runSearch("nope", { x: 0, y: 0, h: 1, w: 1 }, DEFAULT_PARAMS),
    ).rejects.toThrow("service error 404: unknown image id");
  });

  it("copes with non-JSON error bodies", async () => {
    const fetchFn: FetchLike = async () => new Response("boom", { status: 500 });
    const client = createClient("http://svc", fetchFn);
    await expect(client.uploadImage(new Blob())).rejects.toThrow("service error 500");
  });
});
