#!/usr/bin/env python3
"""Compare exhaustive, v1 and v2 search on the planted-disks synthetic
instance, at stride 1 and stride 4, printing one table per stride.

Usage: python3 scripts/run_synthetic_experiment.py [--seed N] [--out-dir DIR]
"""

import argparse
import json
from pathlib import Path

from subimage_search.bench import (
    Disk,
    MethodConfig,
    SyntheticSpec,
    compare_methods,
    generate,
)
from subimage_search.imaging import ImageRGB, save_image


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default=None)
    args = parser.parse_args()

    spec = SyntheticSpec(
        n_rows=376,
        n_cols=432,
        shapes=(Disk(60, 60, 30), Disk(60, 300, 30), Disk(260, 160, 30)),
        seed=args.seed,
    )
    img, boxes = generate(spec)
    x, y, h, w = boxes[0]
    ref = ImageRGB(img.pixels[x : x + h, y : y + w])

    all_reports = {}
    for stride in (1, 4):
        configs = [
            MethodConfig("exhaustive", m=10, stride_x=stride, stride_y=stride),
            MethodConfig("apts-v1", m=10, k_max=20, p=2, stride_x=stride, stride_y=stride),
            MethodConfig("apts-v2", m=10, k_max=20, p=2, stride_x=stride, stride_y=stride),
        ]
        reports = compare_methods(img, ref, configs, with_patches=True)
        from subimage_search.bench import format_table

        print(f"\n=== stride ({stride},{stride}) ===")
        print(format_table(reports))
        all_reports[f"stride_{stride}"] = [r.to_dict() for r in reports]

    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "reports.json").write_text(json.dumps(all_reports, indent=2))
        best = all_reports["stride_1"][0]["candidates"]
        rects = [(c["x"], c["y"], h, w, (255, 0, 0)) for c in best]
        save_image(img, out / "annotated.png", rectangles=rects)
        print(f"\nartifacts written to {out}/")


if __name__ == "__main__":
    main()
