"""Construction of exhaustive and segmentation-reduced search spaces.

A search space holds the admissible top-left corners (x, y) of candidate
windows: clamped so the window fits, and thinned by the stride rule
coordinate % stride == 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imaging import ImageRGB
from .segmentation import SegmentationInstants


@dataclass(frozen=True)
class SearchSpace:
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    stride_x: int = 1
    stride_y: int = 1

    @property
    def size(self) -> int:
        return len(self.xs) * len(self.ys)

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    def mask(self, n_rows: int, n_cols: int) -> np.ndarray:
        """Boolean corner-coordinate mask, for rendering and RLE export."""
        m = np.zeros((n_rows, n_cols), dtype=bool)
        if not self.is_empty:
            m[np.ix_(self.xs, self.ys)] = True
        return m


def exhaustive_space(
    nx: int, ny: int, nx_ref: int, ny_ref: int, stride_x: int = 1, stride_y: int = 1
) -> SearchSpace:
    """All stride-aligned corners at which an nx_ref x ny_ref window fits."""
    _check_dims(nx, ny, nx_ref, ny_ref, stride_x, stride_y)
    xs = tuple(range(0, nx - nx_ref + 1, stride_x))
    ys = tuple(range(0, ny - ny_ref + 1, stride_y))
    return SearchSpace(xs, ys, stride_x, stride_y)


def reduced_space(
    instants_x: SegmentationInstants,
    instants_y: SegmentationInstants,
    nx: int,
    ny: int,
    nx_ref: int,
    ny_ref: int,
    p: int,
    stride_x: int = 1,
    stride_y: int = 1,
) -> SearchSpace:
    """Corners within margin(p) of any segmentation instant on each axis.

    margin = max(floor(nx_ref / p), floor(ny_ref / p)). An empty instant
    set on either axis yields an empty (non-fatal) space.
    """
    _check_dims(nx, ny, nx_ref, ny_ref, stride_x, stride_y)
    if p < 1:
        raise ValueError("p must be >= 1")
    m = margin(nx_ref, ny_ref, p)
    xs = _expand(instants_x, m, nx - nx_ref, stride_x)
    ys = _expand(instants_y, m, ny - ny_ref, stride_y)
    if not xs or not ys:
        return SearchSpace((), (), stride_x, stride_y)
    return SearchSpace(xs, ys, stride_x, stride_y)


def margin(nx_ref: int, ny_ref: int, p: int) -> int:
    return max(nx_ref // p, ny_ref // p)


def _expand(
    instants: SegmentationInstants, m: int, upper: int, stride: int
) -> tuple[int, ...]:
    coords: set[int] = set()
    for i in instants:
        lo = max(i - m, 0)
        hi = min(i + m, upper)
        # first stride-aligned coordinate at or above lo
        start = ((lo + stride - 1) // stride) * stride
        coords.update(range(start, hi + 1, stride))
    return tuple(sorted(coords))


def _check_dims(nx, ny, nx_ref, ny_ref, stride_x, stride_y) -> None:
    if nx_ref > nx or ny_ref > ny:
        raise ValueError(
            f"reference ({nx_ref}x{ny_ref}) larger than image ({nx}x{ny})"
        )
    if min(nx_ref, ny_ref) < 1:
        raise ValueError("reference dimensions must be >= 1")
    if stride_x < 1 or stride_y < 1:
        raise ValueError("strides must be >= 1")


def space_for(img: ImageRGB, ref: ImageRGB, stride_x: int = 1, stride_y: int = 1) -> SearchSpace:
    return exhaustive_space(
        img.n_rows, img.n_cols, ref.n_rows, ref.n_cols, stride_x, stride_y
    )
