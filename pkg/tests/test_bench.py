import numpy as np
import pytest

from subimage_search.bench import (
    Disk,
    MethodConfig,
    Rect,
    SyntheticSpec,
    compare_methods,
    format_table,
    generate,
)
from subimage_search.imaging import ImageRGB


def test_generate_planted_disks_pixel_predicate():
    spec = SyntheticSpec(
        376, 432,
        shapes=(Disk(60, 60, 30), Disk(60, 300, 30), Disk(260, 160, 30)),
    )
    img, boxes = generate(spec)
    assert len(boxes) == 3
    px = img.pixels
    d = 30
    c = (d - 1) / 2
    ii, jj = np.mgrid[0:d, 0:d]
    disk_mask = (ii - c) ** 2 + (jj - c) ** 2 <= (d / 2) ** 2
    full = np.zeros((376, 432), dtype=bool)
    for x, y, h, w in boxes:
        full[x : x + h, y : y + w] |= disk_mask
    assert (px[full] == 0).all()
    assert (px[~full] == 255).all()


def test_generate_no_shapes_uniform():
    img, boxes = generate(SyntheticSpec(10, 12, background=(1, 2, 3)))
    assert boxes == []
    assert (img.pixels == (1, 2, 3)).all()


def test_generate_deterministic_seed():
    spec = SyntheticSpec(20, 20, shapes=(Rect(2, 2, 5, 5),), noise_amplitude=30, seed=9)
    a, _ = generate(spec)
    b, _ = generate(spec)
    assert np.array_equal(a.pixels, b.pixels)


def test_generate_overlapping_shapes_rejected():
    spec = SyntheticSpec(30, 30, shapes=(Rect(0, 0, 10, 10), Rect(5, 5, 10, 10)))
    with pytest.raises(ValueError):
        generate(spec)


def test_generate_out_of_bounds_rejected():
    with pytest.raises(ValueError):
        generate(SyntheticSpec(10, 10, shapes=(Rect(5, 5, 10, 10),)))


def _small_instance():
    spec = SyntheticSpec(
        80, 90,
        shapes=(Disk(10, 10, 12), Disk(10, 60, 12), Disk(55, 35, 12)),
    )
    img, boxes = generate(spec)
    x, y, h, w = boxes[0]
    return img, ImageRGB(img.pixels[x : x + h, y : y + w])


def test_compare_methods_same_positions_and_count_ordering():
    img, ref = _small_instance()
    configs = [
        MethodConfig("exhaustive", m=10),
        MethodConfig("apts-v1", m=10, k_max=20, p=2),
        MethodConfig("apts-v2", m=10, k_max=20, p=2),
    ]
    reports = compare_methods(img, ref, configs)
    positions = [sorted((c.x, c.y) for c in r.candidates) for r in reports]
    assert positions[0] == positions[1] == positions[2]
    assert reports[1].cost_evals < reports[0].cost_evals
    assert reports[0].delta_evals_pct == 0.0
    assert reports[1].delta_evals_pct < 0.0
    for r in reports:
        assert r.space_size <= reports[0].space_size


def test_compare_methods_stride_shrinks_counts():
    img, ref = _small_instance()
    stride1 = compare_methods(img, ref, [MethodConfig("exhaustive", m=5)])
    stride4 = compare_methods(
        img, ref, [MethodConfig("exhaustive", m=5, stride_x=4, stride_y=4)]
    )
    ratio = stride1[0].cost_evals / stride4[0].cost_evals
    assert 13 <= ratio <= 19  # about 16x fewer evaluations


def test_compare_methods_failure_recorded_not_fatal():
    img, ref = _small_instance()
    reports = compare_methods(img, ref, [MethodConfig("no-such-method", m=3)])
    assert len(reports) == 1
    assert reports[0].warnings and "failed" in reports[0].warnings[0]


def test_report_roundtrip_and_table():
    img, ref = _small_instance()
    reports = compare_methods(
        img, ref,
        [MethodConfig("exhaustive", m=5), MethodConfig("apts-v2", m=5, k_max=20)],
        with_patches=True,
    )
    d = reports[0].to_dict()
    assert {"method", "params", "cost_evals", "candidates"} <= set(d)
    table = format_table(reports)
    assert "exhaustive" in table and "apts-v2" in table
    assert "cost evals" in table
