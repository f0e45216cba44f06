import type { ServiceClient } from "./api.js";
import type { RefRect, SearchParams, SearchResponse } from "./types.js";
import { DEFAULT_PARAMS } from "./types.js";

export interface HistoryRow {
  readonly method: string;
  readonly params: Readonly<SearchParams>;
  readonly refRect: Readonly<RefRect>;
  readonly solveTimeS: number;
  readonly costEvals: number;
  readonly candidateCount: number;
  readonly response: SearchResponse;
}

export interface TuningState {
  imageId: string | null;
  imageRows: number;
  imageCols: number;
  refRect: RefRect | null;
  params: SearchParams;
  lastResponse: SearchResponse | null;
  history: HistoryRow[]; // append-only within a session
  pending: boolean;
  error: string | null;
}

export function createState(): TuningState {
  return {
    imageId: null,
    imageRows: 0,
    imageCols: 0,
    refRect: null,
    params: { ...DEFAULT_PARAMS },
    lastResponse: null,
    history: [],
    pending: false,
    error: null,
  };
}

export interface DragPoint {
  x: number; // row, may be fractional (canvas coordinates)
  y: number; // column
}

/**
 * Turn a drag gesture into the reference rectangle: snapped to integer
 * pixel bounds and clamped inside the image. Returns null for a
 * zero-area drag (a plain click), which leaves the selection unchanged.
 */
export function selectReference(
  a: DragPoint,
  b: DragPoint,
  imageRows: number,
  imageCols: number,
): RefRect | null {
  const x0 = Math.max(0, Math.min(Math.floor(Math.min(a.x, b.x)), imageRows));
  const y0 = Math.max(0, Math.min(Math.floor(Math.min(a.y, b.y)), imageCols));
  const x1 = Math.min(Math.ceil(Math.max(a.x, b.x)), imageRows);
  const y1 = Math.min(Math.ceil(Math.max(a.y, b.y)), imageCols);
  const h = x1 - x0;
  const w = y1 - y0;
  if (h <= 0 || w <= 0) return null;
  return { x: x0, y: y0, h, w };
}

/**
 * Run one search against the service and append an immutable history row.
 * Only one search may be in flight; service errors are surfaced on the
 * state without losing form values.
 */
export async function runSearch(state: TuningState, client: ServiceClient): Promise<void> {
  if (state.pending) throw new Error("a search is already running");
  if (!state.imageId) throw new Error("no image uploaded");
  if (!state.refRect) throw new Error("no reference rectangle selected");
  state.pending = true;
  state.error = null;
  try {
    const response = await client.runSearch(state.imageId, state.refRect, state.params);
    state.lastResponse = response;
    state.history.push(
      Object.freeze({
        method: response.method,
        params: Object.freeze({ ...state.params }),
        refRect: Object.freeze({ ...state.refRect }),
        solveTimeS: response.solve_time_s,
        costEvals: response.cost_evals,
        candidateCount: response.candidates.length,
        response,
      }),
    );
  } catch (err) {
    state.error = err instanceof Error ? err.message : String(err);
  } finally {
    state.pending = false;
  }
}
