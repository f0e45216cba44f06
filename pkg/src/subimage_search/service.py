"""HTTP layer for the tuning UI: upload an image once, then iterate
hyperparameters against it. Stateless apart from an in-memory LRU image
store with per-image caches.
"""

from __future__ import annotations

import io
import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from PIL import Image, UnidentifiedImageError
from pydantic import BaseModel, Field

from .imaging import ImageRGB, to_gray
from .patches import DEFAULT_LINK_FACTOR, build_patches
from .profile_search import run_apts_v2
from .search import ImageCaches, run_apts_v1, run_exhaustive
from .segmentation import AptsParams

DEFAULT_MAX_BYTES = 32 * 1024 * 1024
DEFAULT_STORE_CAP = 16

COORD_CONVENTION = "x=row, y=col, top-left origin"


@dataclass
class StoredImage:
    image: ImageRGB
    lock: threading.Lock = field(default_factory=threading.Lock)
    caches: ImageCaches | None = None
    gray_image: ImageRGB | None = None
    gray_caches: ImageCaches | None = None


class ImageStore:
    def __init__(self, cap: int = DEFAULT_STORE_CAP) -> None:
        self._cap = cap
        self._lock = threading.Lock()
        self._items: OrderedDict[str, StoredImage] = OrderedDict()

    def put(self, image: ImageRGB) -> str:
        image_id = uuid.uuid4().hex
        with self._lock:
            self._items[image_id] = StoredImage(image)
            while len(self._items) > self._cap:
                self._items.popitem(last=False)
        return image_id

    def get(self, image_id: str) -> StoredImage | None:
        with self._lock:
            entry = self._items.get(image_id)
            if entry is not None:
                self._items.move_to_end(image_id)
            return entry


class RefRect(BaseModel):
    x: int
    y: int
    h: int = Field(ge=1)
    w: int = Field(ge=1)


class SearchRequest(BaseModel):
    method: str
    ref_rect: RefRect
    top_m: int = Field(default=10, ge=1)
    k_max: int = Field(default=100, ge=1)
    p: int = Field(default=2, ge=1)
    stride_x: int = Field(default=1, ge=1)
    stride_y: int = Field(default=1, ge=1)
    gray: bool = False
    patches: bool = False
    link_factor: float = Field(default=DEFAULT_LINK_FACTOR, gt=0)


def rle_encode(mask: np.ndarray) -> dict:
    """Row-major run-length encoding; runs alternate starting with zeros."""
    flat = mask.ravel().astype(np.int8)
    counts: list[int] = []
    change = np.flatnonzero(np.diff(flat))
    edges = [0, *(change + 1).tolist(), flat.size]
    runs = [(int(flat[edges[i]]), edges[i + 1] - edges[i]) for i in range(len(edges) - 1)]
    if runs and runs[0][0] == 1:
        counts.append(0)
    for _, length in runs:
        counts.append(length)
    return {"n_rows": int(mask.shape[0]), "n_cols": int(mask.shape[1]), "counts": counts}


def create_app(
    max_bytes: int = DEFAULT_MAX_BYTES, store_cap: int = DEFAULT_STORE_CAP
) -> FastAPI:
    app = FastAPI(title="subimage-search")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = ImageStore(store_cap)

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/images")
    async def post_image(request: Request) -> dict:
        body = await request.body()
        if len(body) > max_bytes:
            raise HTTPException(status_code=413, detail="image exceeds size cap")
        try:
            with Image.open(io.BytesIO(body)) as im:
                arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
        except (UnidentifiedImageError, OSError, SyntaxError):
            raise HTTPException(status_code=400, detail="cannot decode image")
        if arr.ndim != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise HTTPException(status_code=400, detail="empty image")
        image = ImageRGB(arr)
        return {"id": store.put(image), "nx": image.n_rows, "ny": image.n_cols}

    @app.post("/images/{image_id}/search")
    def post_search(image_id: str, req: SearchRequest) -> dict:
        entry = store.get(image_id)
        if entry is None:
            raise HTTPException(status_code=404, detail="unknown image id")
        if req.method not in ("exhaustive", "apts-v1", "apts-v2"):
            raise HTTPException(status_code=422, detail=f"unknown method {req.method!r}")
        img = entry.image
        r = req.ref_rect
        if r.x < 0 or r.y < 0 or r.x + r.h > img.n_rows or r.y + r.w > img.n_cols:
            raise HTTPException(status_code=422, detail="reference rectangle outside image")
        ref = ImageRGB(img.pixels[r.x : r.x + r.h, r.y : r.y + r.w])
        with entry.lock:
            if req.gray:
                if entry.gray_caches is None:
                    _, entry.gray_image = to_gray(img)
                    entry.gray_caches = ImageCaches.build(entry.gray_image)
                img, caches = entry.gray_image, entry.gray_caches
                _, ref = to_gray(ref)
            else:
                if entry.caches is None:
                    entry.caches = ImageCaches.build(img)
                caches = entry.caches

        params = AptsParams()
        t0 = time.perf_counter()
        if req.method == "exhaustive":
            result = run_exhaustive(img, ref, req.top_m, req.stride_x, req.stride_y)
        elif req.method == "apts-v1":
            result = run_apts_v1(
                img, ref, req.top_m, req.k_max, req.p,
                req.stride_x, req.stride_y, params, caches,
            )
        else:
            result = run_apts_v2(
                img, ref, req.top_m, req.k_max, req.p,
                req.stride_x, req.stride_y, params, caches=caches,
            )
        solve_time = time.perf_counter() - t0

        patch_list = []
        if req.patches and result.candidates:
            patch_list = build_patches(
                result.candidates, ref.n_rows, ref.n_cols, req.link_factor
            )
        index = {(c.x, c.y): i for i, c in enumerate(result.candidates)}
        return {
            "convention": COORD_CONVENTION,
            "method": req.method,
            "params": req.model_dump(),
            "solve_time_s": solve_time,
            "cost_evals": result.cost_evals,
            "space_size": result.space_size,
            "candidates": [
                {"x": c.x, "y": c.y, "cost": c.cost} for c in result.candidates
            ],
            "patches": [
                {
                    "contour": [[v[0], v[1]] for v in p.vertices],
                    "members": [index[(m.x, m.y)] for m in p.members],
                    "tour_length": p.tour_length,
                }
                for p in patch_list
            ],
            "space_mask_rle": rle_encode(result.space.mask(img.n_rows, img.n_cols)),
            "warnings": result.warnings,
        }

    return app


app = create_app()
