"""Projection of an image to per-axis multivariate series and 1D reference profiles.

All sums run over index ranges 0..N-1 per axis (exclusive upper bound).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from .imaging import ImageRGB

Axis = Literal["rows", "cols"]


@dataclass(frozen=True)
class MultiSeries:
    """Length-T, per-channel nonnegative integer series from axis projection."""

    values: np.ndarray  # (T, channels), int64
    axis: Axis

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(self.values, dtype=np.int64)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def n_channels(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class AxisProfile:
    """A reference image collapsed to per-row (j_axis=0) or per-column
    (j_axis=1) channel sums."""

    j_axis: int  # 0: profile over rows, 1: profile over columns
    values: np.ndarray  # (length, channels), int64

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(self.values, dtype=np.int64)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def length(self) -> int:
        return self.values.shape[0]


def project(img: ImageRGB, axis: Axis) -> MultiSeries:
    """Sum the image along the other axis per channel.

    axis="rows" yields s_x[k] = sum_y I[x][y][k], one entry per row;
    axis="cols" yields s_y[k] = sum_x I[x][y][k], one entry per column.
    """
    px = img.pixels.astype(np.int64)
    if axis == "rows":
        vals = px.sum(axis=1)
    elif axis == "cols":
        vals = px.sum(axis=0)
    else:
        raise ValueError(f"axis must be 'rows' or 'cols', got {axis!r}")
    return MultiSeries(vals, axis)


def reduce_reference(ref: ImageRGB, j_axis: int) -> AxisProfile:
    """1D approximation of the reference image along one axis."""
    if j_axis not in (0, 1):
        raise ValueError(f"j_axis must be 0 or 1, got {j_axis!r}")
    px = ref.pixels.astype(np.int64)
    vals = px.sum(axis=1) if j_axis == 0 else px.sum(axis=0)
    return AxisProfile(j_axis, vals)


def dump_series_csv(series: MultiSeries, path: str | Path) -> None:
    """Write the series as CSV for plotting: index, then one column per channel."""
    channels = [f"c{k}" for k in range(series.n_channels)]
    if series.n_channels == 3:
        channels = ["r", "g", "b"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", *channels])
        for i, row in enumerate(series.values):
            writer.writerow([i, *row.tolist()])
