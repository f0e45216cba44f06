"""Image container, PNG I/O, grayscale conversion and integral images.

Coordinate convention everywhere: x = row index, y = column index.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError

GRAY_WEIGHTS = (0.299, 0.587, 0.114)

Rectangle = tuple[int, int, int, int, tuple[int, int, int]]  # x, y, h, w, color
Polygon = tuple[Sequence[tuple[float, float]], tuple[int, int, int]]


class ImageError(Exception):
    """Base class for image loading/encoding failures."""


class ImageNotFoundError(ImageError):
    pass


class ImageDecodeError(ImageError):
    pass


class EmptyImageError(ImageError):
    pass


@dataclass(frozen=True)
class ImageRGB:
    """Row-major pixel grid, shape (n_rows, n_cols, channels), uint8.

    Channels is 3 for color images; grayscale pipelines use a
    single-channel instance produced by :func:`to_gray`.
    """

    pixels: np.ndarray

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels, dtype=np.uint8)
        if px.ndim != 3:
            raise ValueError(f"pixels must be 3-dimensional, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1 or px.shape[2] < 1:
            raise EmptyImageError(f"zero-dimension image: shape {px.shape}")
        px = np.ascontiguousarray(px)
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def n_rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def n_cols(self) -> int:
        return self.pixels.shape[1]

    @property
    def n_channels(self) -> int:
        return self.pixels.shape[2]


@dataclass(frozen=True)
class IntegralImage:
    """Per-channel cumulative sums; table[x][y][k] = sum over rows <x, cols <y."""

    table: np.ndarray  # (n_rows+1, n_cols+1, channels), int64

    @property
    def n_rows(self) -> int:
        return self.table.shape[0] - 1

    @property
    def n_cols(self) -> int:
        return self.table.shape[1] - 1


def load_image(path: str | Path) -> ImageRGB:
    """Load a PNG as ImageRGB; alpha, if present, is discarded."""
    p = Path(path)
    if not p.exists():
        raise ImageNotFoundError(f"no such file: {p}")
    try:
        with Image.open(p) as im:
            im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageDecodeError(f"cannot decode {p}: {exc}") from exc
    if arr.ndim != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise EmptyImageError(f"decoded image has empty dimensions: {p}")
    return ImageRGB(arr)


def save_image(
    img: ImageRGB,
    path: str | Path,
    rectangles: Sequence[Rectangle] = (),
    polygons: Sequence[Polygon] = (),
) -> None:
    """Write a PNG, optionally with 1-pixel rectangle outlines and polygon
    polylines drawn over a copy. Out-of-bounds annotation parts are clipped.
    """
    px = np.array(img.pixels)  # writable copy
    if px.shape[2] == 1:
        px = np.repeat(px, 3, axis=2)
    for x, y, h, w, color in rectangles:
        _draw_rect_outline(px, x, y, h, w, color)
    for points, color in polygons:
        _draw_polyline(px, points, color)
    try:
        Image.fromarray(px, mode="RGB").save(Path(path), format="PNG")
    except OSError as exc:
        raise ImageError(f"cannot write {path}: {exc}") from exc


def _draw_rect_outline(px: np.ndarray, x: int, y: int, h: int, w: int, color) -> None:
    if h <= 0 or w <= 0:
        return
    nr, nc = px.shape[0], px.shape[1]
    x0, x1 = max(x, 0), min(x + h, nr)
    y0, y1 = max(y, 0), min(y + w, nc)
    if x0 >= x1 or y0 >= y1:
        return
    c = np.asarray(color, dtype=np.uint8)
    if 0 <= x < nr:
        px[x, y0:y1] = c
    if 0 <= x + h - 1 < nr:
        px[x + h - 1, y0:y1] = c
    if 0 <= y < nc:
        px[x0:x1, y] = c
    if 0 <= y + w - 1 < nc:
        px[x0:x1, y + w - 1] = c


def _draw_polyline(px: np.ndarray, points: Sequence[tuple[float, float]], color) -> None:
    pts = [(int(round(a)), int(round(b))) for a, b in points]
    if not pts:
        return
    c = np.asarray(color, dtype=np.uint8)
    if len(pts) == 1:
        _plot(px, pts[0][0], pts[0][1], c)
        return
    closed = pts + [pts[0]]
    for (x0, y0), (x1, y1) in zip(closed[:-1], closed[1:]):
        _bresenham(px, x0, y0, x1, y1, c)


def _plot(px: np.ndarray, x: int, y: int, c: np.ndarray) -> None:
    if 0 <= x < px.shape[0] and 0 <= y < px.shape[1]:
        px[x, y] = c


def _bresenham(px: np.ndarray, x0: int, y0: int, x1: int, y1: int, c: np.ndarray) -> None:
    dx = abs(x1 - x0)
    dy = abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx - dy
    while True:
        _plot(px, x0, y0, c)
        if x0 == x1 and y0 == y1:
            return
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x0 += sx
        if e2 < dx:
            err += dx
            y0 += sy


def to_gray(img: ImageRGB) -> tuple[ImageRGB, ImageRGB]:
    """Weighted-average grayscale: 0.299 R + 0.587 G + 0.114 B.

    Rounds to nearest integer, ties away from zero. Returns both the
    3-identical-channel image and the single-channel view.
    """
    if img.n_channels == 1:
        single = img
    else:
        w = np.asarray(GRAY_WEIGHTS, dtype=np.float64)
        g = img.pixels.astype(np.float64) @ w
        # values are nonnegative, so floor(v + 0.5) is round-half-away-from-zero
        g = np.clip(np.floor(g + 0.5), 0, 255).astype(np.uint8)
        single = ImageRGB(g[:, :, np.newaxis])
    tri = ImageRGB(np.repeat(single.pixels, 3, axis=2))
    return tri, single


def integral_image(img: ImageRGB) -> IntegralImage:
    px = img.pixels.astype(np.int64)
    table = np.zeros((img.n_rows + 1, img.n_cols + 1, img.n_channels), dtype=np.int64)
    table[1:, 1:] = px.cumsum(axis=0).cumsum(axis=1)
    table.flags.writeable = False
    return IntegralImage(table)


def rect_sum(ii: IntegralImage, x: int, y: int, h: int, w: int, k: int) -> int:
    """Sum of channel k over the h-by-w window at top-left (x, y). O(1)."""
    if h == 0 or w == 0:
        return 0
    if x < 0 or y < 0 or h < 0 or w < 0 or x + h > ii.n_rows or y + w > ii.n_cols:
        raise IndexError(
            f"window ({x},{y},{h},{w}) out of bounds for {ii.n_rows}x{ii.n_cols} image"
        )
    t = ii.table
    return int(t[x + h, y + w, k] - t[x, y + w, k] - t[x + h, y, k] + t[x, y, k])
