"""Synthetic problem generation and the method-comparison harness.

Speedups are reported as deterministic cost-evaluation counts (the
machine-independent metric); wall-clock seconds are informational only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .imaging import ImageRGB
from .patches import build_patches
from .profile_search import run_apts_v2
from .search import Candidate, SearchResult, run_apts_v1, run_exhaustive
from .segmentation import AptsParams

BoundingBox = tuple[int, int, int, int]  # x, y, h, w


@dataclass(frozen=True)
class Disk:
    x: int  # bounding-box top-left row
    y: int  # bounding-box top-left column
    diameter: int
    color: tuple[int, int, int] = (0, 0, 0)

    @property
    def box(self) -> BoundingBox:
        return (self.x, self.y, self.diameter, self.diameter)


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    h: int
    w: int
    color: tuple[int, int, int] = (0, 0, 0)

    @property
    def box(self) -> BoundingBox:
        return (self.x, self.y, self.h, self.w)


@dataclass(frozen=True)
class SyntheticSpec:
    n_rows: int
    n_cols: int
    background: tuple[int, int, int] = (255, 255, 255)
    shapes: tuple[Disk | Rect, ...] = ()
    noise_amplitude: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0 <= self.noise_amplitude <= 128):
            raise ValueError("noise amplitude must be in [0, 128]")


def _boxes_overlap(a: BoundingBox, b: BoundingBox) -> bool:
    return a[0] < b[0] + b[2] and b[0] < a[0] + a[2] and a[1] < b[1] + b[3] and b[1] < a[1] + a[3]


def generate(spec: SyntheticSpec) -> tuple[ImageRGB, list[BoundingBox]]:
    """Deterministic synthetic image plus ground-truth shape bounding boxes."""
    boxes = [s.box for s in spec.shapes]
    for i, a in enumerate(boxes):
        if a[0] < 0 or a[1] < 0 or a[0] + a[2] > spec.n_rows or a[1] + a[3] > spec.n_cols:
            raise ValueError(f"shape {i} out of bounds: {a}")
        for b in boxes[i + 1 :]:
            if _boxes_overlap(a, b):
                raise ValueError("planted shapes overlap; ground truth would be ambiguous")
    px = np.empty((spec.n_rows, spec.n_cols, 3), dtype=np.int64)
    px[:, :] = spec.background
    for s in spec.shapes:
        if isinstance(s, Disk):
            d = s.diameter
            c = (d - 1) / 2
            ii, jj = np.mgrid[0:d, 0:d]
            mask = (ii - c) ** 2 + (jj - c) ** 2 <= (d / 2) ** 2
            region = px[s.x : s.x + d, s.y : s.y + d]
            region[mask] = s.color
        else:
            px[s.x : s.x + s.h, s.y : s.y + s.w] = s.color
    if spec.noise_amplitude > 0:
        rng = np.random.default_rng(spec.seed)
        amp = spec.noise_amplitude
        px = px + rng.integers(-amp, amp + 1, size=px.shape)
    return ImageRGB(np.clip(px, 0, 255).astype(np.uint8)), boxes


@dataclass(frozen=True)
class MethodConfig:
    method: str  # "exhaustive", "apts-v1" or "apts-v2"
    m: int
    k_max: int = 100
    p: int = 2
    stride_x: int = 1
    stride_y: int = 1
    apts: AptsParams = AptsParams()


@dataclass
class ExperimentReport:
    method: str
    params: dict
    solve_time_s: float
    cost_evals: int
    space_size: int
    candidates: list[Candidate]
    patch_count: int = 0
    delta_evals_pct: float | None = None  # relative to the exhaustive run
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "params": self.params,
            "solve_time_s": self.solve_time_s,
            "cost_evals": self.cost_evals,
            "space_size": self.space_size,
            "candidates": [
                {"x": c.x, "y": c.y, "cost": c.cost} for c in self.candidates
            ],
            "patch_count": self.patch_count,
            "delta_evals_pct": self.delta_evals_pct,
            "warnings": self.warnings,
        }


def run_method(img: ImageRGB, ref: ImageRGB, cfg: MethodConfig) -> SearchResult:
    if cfg.method == "exhaustive":
        return run_exhaustive(img, ref, cfg.m, cfg.stride_x, cfg.stride_y)
    if cfg.method == "apts-v1":
        return run_apts_v1(
            img, ref, cfg.m, cfg.k_max, cfg.p, cfg.stride_x, cfg.stride_y, cfg.apts
        )
    if cfg.method == "apts-v2":
        return run_apts_v2(
            img, ref, cfg.m, cfg.k_max, cfg.p, cfg.stride_x, cfg.stride_y, cfg.apts
        )
    raise ValueError(f"unknown method {cfg.method!r}")


def compare_methods(
    img: ImageRGB,
    ref: ImageRGB,
    configs: Sequence[MethodConfig],
    with_patches: bool = False,
    link_factor: float = 2.0,
) -> list[ExperimentReport]:
    """Run each configured method on identical inputs; evaluation-count
    deltas are reported relative to the first exhaustive run present."""
    reports: list[ExperimentReport] = []
    for cfg in configs:
        params = {
            "m": cfg.m,
            "k_max": cfg.k_max,
            "p": cfg.p,
            "stride_x": cfg.stride_x,
            "stride_y": cfg.stride_y,
        }
        t0 = time.perf_counter()
        try:
            result = run_method(img, ref, cfg)
        except Exception as exc:  # per-method failures recorded, not fatal
            reports.append(
                ExperimentReport(
                    method=cfg.method,
                    params=params,
                    solve_time_s=time.perf_counter() - t0,
                    cost_evals=0,
                    space_size=0,
                    candidates=[],
                    warnings=[f"failed: {exc}"],
                )
            )
            continue
        elapsed = time.perf_counter() - t0
        patch_count = 0
        if with_patches and result.candidates:
            patch_count = len(
                build_patches(result.candidates, ref.n_rows, ref.n_cols, link_factor)
            )
        reports.append(
            ExperimentReport(
                method=cfg.method,
                params=params,
                solve_time_s=elapsed,
                cost_evals=result.cost_evals,
                space_size=result.space_size,
                candidates=result.candidates,
                patch_count=patch_count,
                warnings=list(result.warnings),
            )
        )
    baseline = next((r for r in reports if r.method == "exhaustive" and not r.warnings), None)
    if baseline is not None and baseline.cost_evals > 0:
        for r in reports:
            r.delta_evals_pct = 100.0 * (r.cost_evals - baseline.cost_evals) / baseline.cost_evals
    return reports


def format_table(reports: Sequence[ExperimentReport]) -> str:
    """Aligned text table: one column per method, rows for hyperparameters,
    solve time, evaluation count and the delta versus exhaustive."""
    headers = [r.method for r in reports]
    rows = [
        ("method", headers),
        (
            "M,K^max,p",
            [f"{r.params['m']},{r.params['k_max']},{r.params['p']}" for r in reports],
        ),
        ("solve time", [f"{r.solve_time_s:.3f}s" for r in reports]),
        ("cost evals", [str(r.cost_evals) for r in reports]),
        (
            "delta evals",
            [
                f"{r.delta_evals_pct:+.1f}%" if r.delta_evals_pct is not None else "-"
                for r in reports
            ],
        ),
        ("candidates", [str(len(r.candidates)) for r in reports]),
    ]
    label_w = max(len(label) for label, _ in rows)
    col_ws = [
        max(len(rows[i][1][j]) for i in range(len(rows))) for j in range(len(reports))
    ]
    lines = []
    for label, cells in rows:
        cells = [c.rjust(col_ws[j]) for j, c in enumerate(cells)]
        lines.append(f"{label.ljust(label_w)}  " + "  ".join(cells))
    return "\n".join(lines)
