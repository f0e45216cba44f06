"""Multi-occurrence sub-image search: SSD cost, top-M scan, non-overlap
filtering, and the exhaustive / segmentation-reduced (v1) pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .imaging import ImageRGB, IntegralImage, integral_image
from .searchspace import SearchSpace, exhaustive_space, reduced_space
from .segmentation import AptsParams, segment
from .timeseries import MultiSeries, project

CostFn = Callable[[ImageRGB, ImageRGB, int, int], float]


@dataclass(frozen=True)
class Candidate:
    x: int
    y: int
    cost: float
    source_axis: str = "full"  # "full", "axis0" or "axis1"

    def sort_key(self) -> tuple:
        return (self.cost, self.x, self.y)


@dataclass(frozen=True)
class TopM:
    """At most `capacity` candidates, ascending by (cost, x, y)."""

    capacity: int
    candidates: tuple[Candidate, ...]

    def __post_init__(self) -> None:
        cands = tuple(self.candidates)
        if len(cands) > self.capacity:
            raise ValueError("more candidates than capacity")
        keys = [c.sort_key() for c in cands]
        if keys != sorted(keys):
            raise ValueError("candidates not sorted by (cost, x, y)")
        object.__setattr__(self, "candidates", cands)

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass
class SearchResult:
    method: str
    candidates: list[Candidate]
    cost_evals: int
    space: SearchSpace
    warnings: list[str] = field(default_factory=list)
    per_axis_evals: dict[str, int] = field(default_factory=dict)

    @property
    def space_size(self) -> int:
        return self.space.size


@dataclass
class ImageCaches:
    """Precomputed per-image artifacts so repeated runs skip re-projection."""

    series_rows: MultiSeries
    series_cols: MultiSeries
    integral: IntegralImage

    @classmethod
    def build(cls, img: ImageRGB) -> "ImageCaches":
        return cls(project(img, "rows"), project(img, "cols"), integral_image(img))


def cost_ssd(img: ImageRGB, ref: ImageRGB, x: int, y: int) -> int:
    """Sum of squared channel differences between the reference and the
    window with top-left corner (x, y). Exact integer arithmetic."""
    h, w = ref.n_rows, ref.n_cols
    if x < 0 or y < 0 or x + h > img.n_rows or y + w > img.n_cols:
        raise IndexError(f"window ({x},{y}) of size {h}x{w} out of bounds")
    win = img.pixels[x : x + h, y : y + w].astype(np.int64)
    diff = win - ref.pixels.astype(np.int64)
    return int((diff * diff).sum())


def scan_top_m(
    img: ImageRGB,
    ref: ImageRGB,
    space: SearchSpace,
    m: int,
    cost_fn: CostFn = cost_ssd,
) -> tuple[TopM, int]:
    """Scan every (x, y) in the space and keep the m lowest-cost candidates.

    Returns the TopM plus the number of cost evaluations (= space size).
    The built-in SSD cost uses a vectorized row scan; results are identical
    to the per-window loop.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if space.is_empty:
        return TopM(m, ()), 0
    if cost_fn is cost_ssd:
        scored = _scan_ssd_vectorized(img, ref, space)
    else:
        scored = [
            Candidate(x, y, cost_fn(img, ref, x, y))
            for x in space.xs
            for y in space.ys
        ]
    scored.sort(key=Candidate.sort_key)
    return TopM(m, tuple(scored[:m])), space.size


def _scan_ssd_vectorized(img: ImageRGB, ref: ImageRGB, space: SearchSpace) -> list[Candidate]:
    h, w = ref.n_rows, ref.n_cols
    windows = sliding_window_view(img.pixels, (h, w), axis=(0, 1))  # (X, Y, C, h, w)
    ref_t = np.transpose(ref.pixels, (2, 0, 1)).astype(np.int64)
    ys = np.asarray(space.ys)
    out: list[Candidate] = []
    for x in space.xs:
        diff = windows[x, ys].astype(np.int64) - ref_t
        costs = np.einsum("nkij,nkij->n", diff, diff)
        out.extend(Candidate(x, int(y), int(c)) for y, c in zip(ys, costs))
    return out


def filter_nonoverlap(cands: TopM | Sequence[Candidate], nx_ref: int, ny_ref: int) -> list[Candidate]:
    """Greedy best-first pass keeping candidates whose windows have zero
    intersection area with every previously kept window."""
    items = list(cands.candidates) if isinstance(cands, TopM) else list(cands)
    items.sort(key=Candidate.sort_key)
    kept: list[Candidate] = []
    for c in items:
        if all(
            abs(c.x - k.x) >= nx_ref or abs(c.y - k.y) >= ny_ref for k in kept
        ):
            kept.append(c)
    return kept


def run_exhaustive(
    img: ImageRGB,
    ref: ImageRGB,
    m: int,
    stride_x: int = 1,
    stride_y: int = 1,
) -> SearchResult:
    space = exhaustive_space(
        img.n_rows, img.n_cols, ref.n_rows, ref.n_cols, stride_x, stride_y
    )
    top, n_evals = scan_top_m(img, ref, space, m)
    return SearchResult(
        method="exhaustive",
        candidates=filter_nonoverlap(top, ref.n_rows, ref.n_cols),
        cost_evals=n_evals,
        space=space,
    )


def build_reduced_space(
    img: ImageRGB,
    ref: ImageRGB,
    k_max: int,
    p: int,
    stride_x: int,
    stride_y: int,
    params: AptsParams,
    caches: ImageCaches | None = None,
) -> SearchSpace:
    """Project both axes, segment, and expand instants into a search space."""
    params = params.with_k_max(k_max)
    series_rows = caches.series_rows if caches else project(img, "rows")
    series_cols = caches.series_cols if caches else project(img, "cols")
    instants_x = segment(series_rows, params)
    instants_y = segment(series_cols, params)
    return reduced_space(
        instants_x,
        instants_y,
        img.n_rows,
        img.n_cols,
        ref.n_rows,
        ref.n_cols,
        p,
        stride_x,
        stride_y,
    )


def run_apts_v1(
    img: ImageRGB,
    ref: ImageRGB,
    m: int,
    k_max: int,
    p: int,
    stride_x: int = 1,
    stride_y: int = 1,
    params: AptsParams = AptsParams(),
    caches: ImageCaches | None = None,
) -> SearchResult:
    space = build_reduced_space(img, ref, k_max, p, stride_x, stride_y, params, caches)
    if space.is_empty:
        return SearchResult(
            method="apts-v1",
            candidates=[],
            cost_evals=0,
            space=space,
            warnings=["reduced search space is empty; no candidates"],
        )
    top, n_evals = scan_top_m(img, ref, space, m)
    return SearchResult(
        method="apts-v1",
        candidates=filter_nonoverlap(top, ref.n_rows, ref.n_cols),
        cost_evals=n_evals,
        space=space,
    )
