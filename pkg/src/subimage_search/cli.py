"""Command-line front door: single-shot searches, patch extraction, and
synthetic benchmark runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bench
from .imaging import ImageError, ImageRGB, load_image, save_image, to_gray
from .patches import DEFAULT_LINK_FACTOR, PatchContour, build_patches
from .profile_search import run_apts_v2
from .search import Candidate, SearchResult, run_apts_v1, run_exhaustive
from .segmentation import AptsParams

METHODS = ("exhaustive", "apts-v1", "apts-v2")

BOX_COLOR = (255, 0, 0)
CONTOUR_COLOR = (0, 0, 255)


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    method: str
    image: str
    ref: str | None = None
    ref_rect: tuple[int, int, int, int] | None = None
    top_m: int = 10
    k_max: int = 100
    p: int = 2
    stride_x: int = 1
    stride_y: int = 1
    gray: bool = False
    patches: bool = False
    link_factor: float = DEFAULT_LINK_FACTOR
    out_image: str | None = None
    out_json: str | None = None
    threads: int | None = None
    apts: AptsParams = field(default_factory=AptsParams)

    def validate(self) -> None:
        if self.method not in METHODS:
            raise CliError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.top_m < 1 or self.p < 1 or self.stride_x < 1 or self.stride_y < 1:
            raise CliError("top-m, p and strides must all be >= 1")
        if (self.ref is None) == (self.ref_rect is None):
            raise CliError("exactly one of --ref and --ref-rect is required")


def _cut_reference(img: ImageRGB, rect: tuple[int, int, int, int]) -> ImageRGB:
    x, y, h, w = rect
    if h < 1 or w < 1 or x < 0 or y < 0 or x + h > img.n_rows or y + w > img.n_cols:
        raise CliError(f"reference rectangle {rect} does not fit in the image")
    return ImageRGB(img.pixels[x : x + h, y : y + w])


def _patches_payload(patches: list[PatchContour], candidates: list[Candidate]) -> list[dict]:
    index = {(c.x, c.y): i for i, c in enumerate(candidates)}
    return [
        {
            "contour": [[v[0], v[1]] for v in p.vertices],
            "members": [index[(m.x, m.y)] for m in p.members],
            "tour_length": p.tour_length,
        }
        for p in patches
    ]


def execute_search(config: RunConfig) -> dict:
    """Run the configured pipeline; returns the JSON-ready report and writes
    the requested artifacts."""
    config.validate()
    img = load_image(config.image)
    if config.ref is not None:
        ref = load_image(config.ref)
    else:
        ref = _cut_reference(img, config.ref_rect)
    if ref.n_rows > img.n_rows or ref.n_cols > img.n_cols:
        raise CliError("reference image larger than the searched image")
    annotate_img = img
    if config.gray:
        _, img = to_gray(img)
        _, ref = to_gray(ref)

    t0 = time.perf_counter()
    if config.method == "exhaustive":
        result = run_exhaustive(img, ref, config.top_m, config.stride_x, config.stride_y)
    elif config.method == "apts-v1":
        result = run_apts_v1(
            img, ref, config.top_m, config.k_max, config.p,
            config.stride_x, config.stride_y, config.apts,
        )
    else:
        result = run_apts_v2(
            img, ref, config.top_m, config.k_max, config.p,
            config.stride_x, config.stride_y, config.apts,
        )
    solve_time = time.perf_counter() - t0

    patch_list: list[PatchContour] = []
    if config.patches and result.candidates:
        patch_list = build_patches(
            result.candidates, ref.n_rows, ref.n_cols, config.link_factor
        )

    report = {
        "method": config.method,
        "params": {
            "top_m": config.top_m,
            "k_max": config.k_max,
            "p": config.p,
            "stride_x": config.stride_x,
            "stride_y": config.stride_y,
            "grayscale": config.gray,
            "link_factor": config.link_factor,
            "threads": config.threads,
        },
        "solve_time_s": solve_time,
        "cost_evals": result.cost_evals,
        "space_size": result.space_size,
        "candidates": [{"x": c.x, "y": c.y, "cost": c.cost} for c in result.candidates],
        "patches": _patches_payload(patch_list, result.candidates),
        "warnings": result.warnings,
    }

    if config.out_json:
        Path(config.out_json).write_text(json.dumps(report, indent=2))
    if config.out_image:
        rects = [
            (c.x, c.y, ref.n_rows, ref.n_cols, BOX_COLOR) for c in result.candidates
        ]
        polys = [(p.vertices, CONTOUR_COLOR) for p in patch_list if len(p.vertices) >= 2]
        save_image(annotate_img, config.out_image, rectangles=rects, polygons=polys)
    return report


def run(config: RunConfig) -> int:
    try:
        report = execute_search(config)
    except (CliError, ImageError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    print(json.dumps(report, indent=2))
    return 0


def _default_synthetic(seed: int) -> tuple[ImageRGB, ImageRGB]:
    """Planted-disks instance used by the bench subcommand when no image is
    supplied: white 376x432 background, three identical 30-px black disks."""
    spec = bench.SyntheticSpec(
        n_rows=376,
        n_cols=432,
        shapes=(
            bench.Disk(60, 60, 30),
            bench.Disk(60, 300, 30),
            bench.Disk(260, 160, 30),
        ),
        seed=seed,
    )
    img, boxes = bench.generate(spec)
    x, y, h, w = boxes[0]
    return img, ImageRGB(img.pixels[x : x + h, y : y + w])


def run_bench(args: argparse.Namespace) -> int:
    try:
        if args.image:
            img = load_image(args.image)
            if not args.ref_rect:
                raise CliError("--ref-rect is required with --image")
            ref = _cut_reference(img, args.ref_rect)
        else:
            img, ref = _default_synthetic(args.seed)
        configs = [
            bench.MethodConfig("exhaustive", args.top_m,
                               stride_x=args.stride_x, stride_y=args.stride_y),
            bench.MethodConfig("apts-v1", args.top_m, args.k_max, args.p,
                               args.stride_x, args.stride_y),
            bench.MethodConfig("apts-v2", args.top_m, args.k_max, args.p,
                               args.stride_x, args.stride_y),
        ]
        reports = bench.compare_methods(img, ref, configs)
    except (CliError, ImageError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    print(bench.format_table(reports))
    if args.out_json:
        Path(args.out_json).write_text(
            json.dumps([r.to_dict() for r in reports], indent=2)
        )
    return 0


def _rect(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected x,y,h,w")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subimage-search",
        description="Find all sub-images similar to a reference image.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="run one search and write artifacts")
    s.add_argument("--method", required=True, choices=METHODS)
    s.add_argument("--image", required=True)
    s.add_argument("--ref")
    s.add_argument("--ref-rect", type=_rect, metavar="x,y,h,w")
    s.add_argument("--top-m", type=int, default=10)
    s.add_argument("--k-max", type=int, default=100)
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--stride-x", type=int, default=1)
    s.add_argument("--stride-y", type=int, default=1)
    s.add_argument("--gray", action="store_true")
    s.add_argument("--patches", action="store_true")
    s.add_argument("--link-factor", type=float, default=DEFAULT_LINK_FACTOR)
    s.add_argument("--out-image")
    s.add_argument("--out-json")
    s.add_argument("--threads", type=int)

    b = sub.add_parser("bench", help="compare methods on one instance")
    b.add_argument("--image")
    b.add_argument("--ref-rect", type=_rect, metavar="x,y,h,w")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--top-m", type=int, default=10)
    b.add_argument("--k-max", type=int, default=20)
    b.add_argument("--p", type=int, default=2)
    b.add_argument("--stride-x", type=int, default=1)
    b.add_argument("--stride-y", type=int, default=1)
    b.add_argument("--out-json")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench":
        return run_bench(args)
    config = RunConfig(
        method=args.method,
        image=args.image,
        ref=args.ref,
        ref_rect=args.ref_rect,
        top_m=args.top_m,
        k_max=args.k_max,
        p=args.p,
        stride_x=args.stride_x,
        stride_y=args.stride_y,
        gray=args.gray,
        patches=args.patches,
        link_factor=args.link_factor,
        out_image=args.out_image,
        out_json=args.out_json,
        threads=args.threads,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
