import type { RefRect, SearchParams, SearchResponse, UploadResponse } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface ServiceClient {
  uploadImage(bytes: ArrayBuffer | Blob): Promise<UploadResponse>;
  runSearch(imageId: string, refRect: RefRect, params: SearchParams): Promise<SearchResponse>;
}

export function createClient(baseUrl: string, fetchFn: FetchLike = fetch): ServiceClient {
  async function expectOk(res: Response): Promise<any> {
    if (!res.ok) {
      let detail = `${res.status}`;
      try {
        const body = await res.json();
        if (body.detail) detail = `${res.status}: ${body.detail}`;
      } catch {
        // non-JSON error body; keep the status code
      }
      throw new Error(`service error ${detail}`);
    }
    return res.json();
  }

  return {
    async uploadImage(bytes) {
      const res = await fetchFn(`${baseUrl}/images`, {
        method: "POST",
        headers: { "Content-Type": "application/octet-stream" },
        body: bytes,
      });
      return expectOk(res);
    },

    async runSearch(imageId, refRect, params) {
      const res = await fetchFn(`${baseUrl}/images/${imageId}/search`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ ...params, ref_rect: refRect }),
      });
      return expectOk(res);
    },
  };
}
