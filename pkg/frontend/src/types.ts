// Shared types mirroring the service's JSON schema.
// Coordinate convention everywhere: x = row, y = column, top-left origin.

export interface RefRect {
  x: number;
  y: number;
  h: number;
  w: number;
}

export interface Candidate {
  x: number;
  y: number;
  cost: number;
}

export interface Patch {
  contour: [number, number][];
  members: number[];
  tour_length: number;
}

export interface RleMask {
  n_rows: number;
  n_cols: number;
  counts: number[];
}

export interface SearchParams {
  method: "exhaustive" | "apts-v1" | "apts-v2";
  top_m: number;
  k_max: number;
  p: number;
  stride_x: number;
  stride_y: number;
  gray: boolean;
  patches: boolean;
  link_factor: number;
}

export interface SearchResponse {
  convention: string;
  method: string;
  params: Record<string, unknown>;
  solve_time_s: number;
  cost_evals: number;
  space_size: number;
  candidates: Candidate[];
  patches: Patch[];
  space_mask_rle: RleMask;
  warnings: string[];
}

export interface UploadResponse {
  id: string;
  nx: number;
  ny: number;
}

export const DEFAULT_PARAMS: SearchParams = {
  method: "apts-v2",
  top_m: 10,
  k_max: 20,
  p: 2,
  stride_x: 1,
  stride_y: 1,
  gray: false,
  patches: false,
  link_factor: 2,
};
