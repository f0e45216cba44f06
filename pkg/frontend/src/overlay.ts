import type { RefRect, RleMask, SearchResponse } from "./types.js";

// Rendering is expressed as data so it can be tested without a canvas.
// Pixel coordinates follow the service convention (x = row, y = column);
// the canvas adapter in main.ts maps (x, y) -> (top, left).

export interface BoxCommand {
  kind: "box";
  x: number;
  y: number;
  h: number;
  w: number;
  color: string;
  label: string;
}

export interface PolylineCommand {
  kind: "polyline";
  points: [number, number][]; // closed contour, [x, y] pairs
  color: string;
}

export interface MaskCommand {
  kind: "mask";
  mask: RleMask;
  color: string;
  alpha: number;
}

export type DrawCommand = BoxCommand | PolylineCommand | MaskCommand;

export const CANDIDATE_COLOR = "#e02020";
export const REFERENCE_COLOR = "#20a020";
export const CONTOUR_COLOR = "#2040e0";
export const MASK_COLOR = "#e0a020";

/** Expand a run-length encoded mask (alternating 0/1 runs, zeros first). */
export function decodeRle(mask: RleMask): Uint8Array {
  const total = mask.n_rows * mask.n_cols;
  const flat = new Uint8Array(total);
  let pos = 0;
  let value = 0;
  for (const count of mask.counts) {
    if (count < 0 || pos + count > total) {
      throw new Error("RLE counts exceed mask size");
    }
    if (value === 1) flat.fill(1, pos, pos + count);
    pos += count;
    value = 1 - value;
  }
  if (pos !== total) throw new Error("RLE counts do not cover mask");
  return flat;
}

export interface OverlayOptions {
  refRect?: RefRect | null;
  showMask?: boolean;
}

/**
 * Translate a search response into draw commands: one box per candidate
 * (at the reference size), one polyline per patch contour, plus the
 * reference rectangle and, optionally, the searched-space mask.
 */
export function buildOverlay(
  response: SearchResponse,
  options: OverlayOptions = {},
): DrawCommand[] {
  const commands: DrawCommand[] = [];
  const refRect = options.refRect ?? null;
  if (options.showMask) {
    commands.push({
      kind: "mask",
      mask: response.space_mask_rle,
      color: MASK_COLOR,
      alpha: 0.25,
    });
  }
  if (refRect) {
    commands.push({
      kind: "box",
      x: refRect.x,
      y: refRect.y,
      h: refRect.h,
      w: refRect.w,
      color: REFERENCE_COLOR,
      label: "ref",
    });
  }
  const h = refRect?.h ?? 0;
  const w = refRect?.w ?? 0;
  response.candidates.forEach((c, i) => {
    commands.push({
      kind: "box",
      x: c.x,
      y: c.y,
      h,
      w,
      color: CANDIDATE_COLOR,
      label: `#${i + 1} cost=${c.cost}`,
    });
  });
  for (const patch of response.patches) {
    commands.push({
      kind: "polyline",
      points: patch.contour.map(([x, y]) => [x, y]),
      color: CONTOUR_COLOR,
    });
  }
  return commands;
}

/** Boxes drawn for candidates only (excludes the reference box). */
export function candidateBoxes(commands: DrawCommand[]): BoxCommand[] {
  return commands.filter(
    (c): c is BoxCommand => c.kind === "box" && c.color === CANDIDATE_COLOR,
  );
}
