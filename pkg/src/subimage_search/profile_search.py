"""Axis-profile search (v2): windows are compared to 1D reductions of the
reference image using O(1) integral-image window sums, one scan per axis,
then merged, normalized and overlap-filtered.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .imaging import ImageRGB, IntegralImage, integral_image
from .search import (
    Candidate,
    ImageCaches,
    SearchResult,
    TopM,
    build_reduced_space,
    filter_nonoverlap,
)
from .searchspace import SearchSpace
from .segmentation import AptsParams
from .timeseries import AxisProfile, reduce_reference


@dataclass(frozen=True)
class ProfileCost:
    x: int
    y: int
    j_axis: int
    raw_cost: int
    normalized_cost: float


def cost_profile(
    ii: IntegralImage,
    profile: AxisProfile,
    x: int,
    y: int,
    nx_ref: int,
    ny_ref: int,
) -> int:
    """Squared difference between the window's per-row (j_axis=0) or
    per-column (j_axis=1) channel sums and the reference profile."""
    if x < 0 or y < 0 or x + nx_ref > ii.n_rows or y + ny_ref > ii.n_cols:
        raise IndexError(f"window ({x},{y}) of size {nx_ref}x{ny_ref} out of bounds")
    t = ii.table
    if profile.j_axis == 0:
        sums = (
            t[x + 1 : x + nx_ref + 1, y + ny_ref]
            - t[x + 1 : x + nx_ref + 1, y]
            - t[x : x + nx_ref, y + ny_ref]
            + t[x : x + nx_ref, y]
        )
    else:
        sums = (
            t[x + nx_ref, y + 1 : y + ny_ref + 1]
            - t[x + nx_ref, y : y + ny_ref]
            - t[x, y + 1 : y + ny_ref + 1]
            + t[x, y : y + ny_ref]
        )
    diff = sums - profile.values
    return int((diff * diff).sum())


def normalized(raw_cost: float, profile_length: int, channels: int) -> float:
    """Cost per summand, making the two axes' costs commensurable."""
    return raw_cost / (channels * profile_length)


def _scan_profile_axis(
    ii: IntegralImage,
    profile: AxisProfile,
    space: SearchSpace,
    nx_ref: int,
    ny_ref: int,
    m: int,
) -> tuple[TopM, int]:
    """Vectorized equivalent of calling cost_profile at every space point."""
    t = ii.table
    ys = np.asarray(space.ys)
    channels = t.shape[2]
    tag = f"axis{profile.j_axis}"
    norm = channels * profile.length
    scored: list[Candidate] = []
    for x in space.xs:
        if profile.j_axis == 0:
            sums = (
                t[x + 1 : x + nx_ref + 1][:, ys + ny_ref]
                - t[x + 1 : x + nx_ref + 1][:, ys]
                - t[x : x + nx_ref][:, ys + ny_ref]
                + t[x : x + nx_ref][:, ys]
            )  # (h, n_ys, C)
            diff = sums - profile.values[:, np.newaxis, :]
            costs = np.einsum("inc,inc->n", diff, diff)
        else:
            col_sums = t[x + nx_ref, 1:] - t[x + nx_ref, :-1] - t[x, 1:] + t[x, :-1]
            win = sliding_window_view(col_sums, ny_ref, axis=0)  # (Ny-w+1, C, w)
            diff = win[ys] - profile.values.T
            costs = np.einsum("ncj,ncj->n", diff, diff)
        scored.extend(
            Candidate(x, int(y), int(c) / norm, tag) for y, c in zip(ys, costs)
        )
    scored.sort(key=Candidate.sort_key)
    return TopM(m, tuple(scored[:m])), space.size


def scan_scalar(
    ii: IntegralImage, ref: ImageRGB, space: SearchSpace, m: int
) -> tuple[TopM, int]:
    """Maximal simplification: compare per-channel window totals only.

    Kept behind a flag; too coarse for practical use.
    """
    t = ii.table
    h, w = ref.n_rows, ref.n_cols
    ref_totals = ref.pixels.astype(np.int64).sum(axis=(0, 1))
    ys = np.asarray(space.ys)
    channels = t.shape[2]
    scored: list[Candidate] = []
    for x in space.xs:
        totals = t[x + h, ys + w] - t[x + h, ys] - t[x, ys + w] + t[x, ys]
        diff = totals - ref_totals
        costs = (diff * diff).sum(axis=1)
        scored.extend(
            Candidate(x, int(y), int(c) / channels, "scalar") for y, c in zip(ys, costs)
        )
    scored.sort(key=Candidate.sort_key)
    return TopM(m, tuple(scored[:m])), space.size


def run_apts_v2(
    img: ImageRGB,
    ref: ImageRGB,
    m: int,
    k_max: int,
    p: int,
    stride_x: int = 1,
    stride_y: int = 1,
    params: AptsParams = AptsParams(),
    scalar_approximation: bool = False,
    caches: ImageCaches | None = None,
) -> SearchResult:
    """Per-axis 1D-profile scans over the shared reduced space, merged and
    overlap-filtered on normalized cost."""
    space = build_reduced_space(img, ref, k_max, p, stride_x, stride_y, params, caches)
    if space.is_empty:
        return SearchResult(
            method="apts-v2",
            candidates=[],
            cost_evals=0,
            space=space,
            warnings=["reduced search space is empty; no candidates"],
        )
    ii = caches.integral if caches else integral_image(img)
    per_axis: dict[str, int] = {}
    pool: list[Candidate] = []
    if scalar_approximation:
        top, n = scan_scalar(ii, ref, space, m)
        per_axis["scalar"] = n
        pool.extend(top.candidates)
    else:
        for j_axis in (0, 1):
            profile = reduce_reference(ref, j_axis)
            top, n = _scan_profile_axis(
                ii, profile, space, ref.n_rows, ref.n_cols, m
            )
            per_axis[f"axis{j_axis}"] = n
            pool.extend(top.candidates)
    best: dict[tuple[int, int], Candidate] = {}
    for c in pool:
        key = (c.x, c.y)
        if key not in best or c.cost < best[key].cost:
            best[key] = c
    merged = sorted(best.values(), key=Candidate.sort_key)
    return SearchResult(
        method="apts-v2",
        candidates=filter_nonoverlap(merged, ref.n_rows, ref.n_cols),
        cost_evals=sum(per_axis.values()),
        space=space,
        per_axis_evals=per_axis,
    )
