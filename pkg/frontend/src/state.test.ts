import { describe, expect, it } from "vitest";
import type { ServiceClient } from "./api.js";
import { createState, runSearch, selectReference } from "./state.js";
import type { SearchResponse } from "./types.js";

const THREE_MATCHES: SearchResponse = {
  convention: "x=row, y=col, top-left origin",
  method: "apts-v2",
  params: {},
  solve_time_s: 0.042,
  cost_evals: 1234,
  space_size: 5000,
  candidates: [
    { x: 60, y: 60, cost: 0 },
    { x: 60, y: 300, cost: 0 },
    { x: 260, y: 160, cost: 0 },
  ],
  patches: [],
  space_mask_rle: { n_rows: 2, n_cols: 2, counts: [1, 3] },
  warnings: [],
};

function stubClient(response: SearchResponse | Error): ServiceClient {
  return {
    uploadImage: async () => ({ id: "img-1", nx: 376, ny: 432 }),
    runSearch: async () => {
      if (response instanceof Error) throw response;
      return response;
    },
  };
}

describe("selectReference", () => {
  it("emits the clamped integer rectangle for a drag", () => {
    const rect = selectReference({ x: 10, y: 10 }, { x: 30, y: 42 }, 100, 100);
    expect(rect).toEqual({ x: 10, y: 10, h: 20, w: 32 });
  });

  it("normalizes drags made in any direction", () => {
    const rect = selectReference({ x: 30, y: 42 }, { x: 10, y: 10 }, 100, 100);
    expect(rect).toEqual({ x: 10, y: 10, h: 20, w: 32 });
  });

  it("snaps fractional canvas coordinates outward to integers", () => {
    const rect = selectReference({ x: 9.6, y: 10.2 }, { x: 29.3, y: 41.9 }, 100, 100);
    expect(rect).toEqual({ x: 9, y: 10, h: 21, w: 32 });
  });

  it("clamps a drag past the image edge", () => {
    const rect = selectReference({ x: -5, y: 90 }, { x: 40, y: 130 }, 100, 100);
    expect(rect).toEqual({ x: 0, y: 90, h: 40, w: 10 });
  });

  it("returns null for a plain click (zero area)", () => {
    expect(selectReference({ x: 15, y: 15 }, { x: 15, y: 15 }, 100, 100)).toBeNull();
  });

  it("returns null when the drag lies entirely outside the image", () => {
    expect(selectReference({ x: 120, y: 10 }, { x: 140, y: 30 }, 100, 100)).toBeNull();
  });
});

describe("runSearch", () => {
  function readyState() {
    const state = createState();
    state.imageId = "img-1";
    state.imageRows = 376;
    state.imageCols = 432;
    state.refRect = { x: 60, y: 60, h: 30, w: 30 };
    return state;
  }

  it("stores the response and appends one history row per run", async () => {
    const state = readyState();
    const client = stubClient(THREE_MATCHES);
    await runSearch(state, client);
    expect(state.lastResponse).toBe(THREE_MATCHES);
    expect(state.history).toHaveLength(1);
    await runSearch(state, client);
    expect(state.history).toHaveLength(2);
    expect(state.history[0].candidateCount).toBe(3);
    expect(state.history[0].costEvals).toBe(1234);
    expect(state.history[0].refRect).toEqual({ x: 60, y: 60, h: 30, w: 30 });
    expect(state.pending).toBe(false);
  });

  it("history rows keep the parameters used at run time", async () => {
    const state = readyState();
    await runSearch(state, stubClient(THREE_MATCHES));
    state.params = { ...state.params, top_m: 99 };
    expect(state.history[0].params.top_m).toBe(10);
  });

  it("surfaces service errors without losing form state", async () => {
    const state = readyState();
    await runSearch(state, stubClient(new Error("service error 422: bad rect")));
    expect(state.error).toBe("service error 422: bad rect");
    expect(state.refRect).toEqual({ x: 60, y: 60, h: 30, w: 30 });
    expect(state.history).toHaveLength(0);
    expect(state.pending).toBe(false);
  });

  it("rejects a second search while one is pending", async () => {
    const state = readyState();
    let release!: (r: SearchResponse) => void;
    const client: ServiceClient = {
      uploadImage: async () => ({ id: "img-1", nx: 1, ny: 1 }),
      runSearch: () => new Promise((resolve) => (release = resolve)),
    };
    const first = runSearch(state, client);
    expect(state.pending).toBe(true);
    await expect(runSearch(state, client)).rejects.toThrow(/already running/);
    release(THREE_MATCHES);
    await first;
    expect(state.history).toHaveLength(1);
  });

  it("refuses to run without an image or reference", async () => {
    const state = createState();
    await expect(runSearch(state, stubClient(THREE_MATCHES))).rejects.toThrow(/no image/);
    state.imageId = "img-1";
    await expect(runSearch(state, stubClient(THREE_MATCHES))).rejects.toThrow(/no reference/);
  });
});
