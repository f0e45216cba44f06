// UI round trip with a stubbed service: exactly 3 boxes are rendered for a
// fixed 3-candidate response, the history gains one row per run, and
// reference selection emits the clamped integer rectangle.
import { describe, expect, it } from "vitest";
import type { ServiceClient } from "./api.js";
import { buildOverlay, candidateBoxes } from "./overlay.js";
import { createState, runSearch, selectReference } from "./state.js";
import type { SearchResponse } from "./types.js";

const STUB_RESPONSE: SearchResponse = {
  convention: "x=row, y=col, top-left origin",
  method: "apts-v2",
  params: {},
  solve_time_s: 0.05,
  cost_evals: 15000,
  space_size: 139841,
  candidates: [
    { x: 60, y: 60, cost: 0 },
    { x: 60, y: 300, cost: 0 },
    { x: 260, y: 160, cost: 0 },
  ],
  patches: [],
  space_mask_rle: { n_rows: 1, n_cols: 1, counts: [0, 1] },
  warnings: [],
};

const stub: ServiceClient = {
  uploadImage: async () => ({ id: "img", nx: 376, ny: 432 }),
  runSearch: async () => STUB_RESPONSE,
};

describe("acceptance", () => {
  it("criterion 9: UI round trip against a stubbed service", async () => {
    const state = createState();
    state.imageId = "img";
    state.imageRows = 376;
    state.imageCols = 432;

    const rect = selectReference({ x: 10, y: 10 }, { x: 30, y: 42 }, 376, 432);
    expect(rect).toEqual({ x: 10, y: 10, h: 20, w: 32 });
    state.refRect = rect;

    await runSearch(state, stub);
    expect(state.history).toHaveLength(1);
    await runSearch(state, stub);
    expect(state.history).toHaveLength(2);

    const boxes = candidateBoxes(buildOverlay(state.lastResponse!, { refRect: rect }));
    expect(boxes).toHaveLength(3);

    console.log(
      "\nPASS criterion 9: 3 boxes rendered, one history row per run, " +
        "clamped integer reference rectangle",
    );
  });
});
