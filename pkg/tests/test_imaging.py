import numpy as np
import pytest
from hypothesis import given, strategies as st

from subimage_search.imaging import (
    EmptyImageError,
    ImageDecodeError,
    ImageNotFoundError,
    ImageRGB,
    integral_image,
    load_image,
    rect_sum,
    save_image,
    to_gray,
)

from conftest import random_image


def test_load_1x1_white(tmp_path):
    path = tmp_path / "w.png"
    save_image(ImageRGB(np.full((1, 1, 3), 255, dtype=np.uint8)), path)
    img = load_image(path)
    assert img.pixels[0, 0].tolist() == [255, 255, 255]


def test_round_trip_bit_identical(tmp_path, rng):
    img = random_image(rng, 300, 480)
    path = tmp_path / "rt.png"
    save_image(img, path)
    again = load_image(path)
    assert np.array_equal(img.pixels, again.pixels)


def test_missing_file_distinct_error(tmp_path):
    with pytest.raises(ImageNotFoundError):
        load_image(tmp_path / "nope.png")


def test_truncated_file_decode_error(tmp_path, rng):
    path = tmp_path / "t.png"
    save_image(random_image(rng, 20, 20), path)
    data = path.read_bytes()
    path.write_bytes(data[: len(data) // 2])
    with pytest.raises(ImageDecodeError):
        load_image(path)


def test_garbage_bytes_decode_error(tmp_path):
    path = tmp_path / "g.png"
    path.write_bytes(b"not a png at all")
    with pytest.raises(ImageDecodeError):
        load_image(path)


def test_zero_dimension_rejected():
    with pytest.raises(EmptyImageError):
        ImageRGB(np.zeros((0, 3, 3), dtype=np.uint8))


def test_annotation_draws_only_outline(tmp_path, rng):
    img = random_image(rng, 10, 12)
    path = tmp_path / "a.png"
    save_image(img, path, rectangles=[(0, 0, 2, 2, (9, 9, 9))])
    out = load_image(path)
    diff = np.any(out.pixels != img.pixels, axis=2)
    expected = np.zeros((10, 12), dtype=bool)
    expected[0:2, 0:2] = True  # 2x2 rectangle outline is all 4 pixels
    # only annotation pixels changed, and changed pixels carry the color
    assert diff[0:2, 0:2].all()
    assert not diff[2:, :].any() and not diff[:, 2:].any()
    assert (out.pixels[0, 0] == (9, 9, 9)).all()


def test_annotation_source_unmodified(tmp_path, rng):
    img = random_image(rng, 8, 8)
    before = np.array(img.pixels)
    save_image(img, tmp_path / "b.png", rectangles=[(1, 1, 4, 4, (0, 255, 0))])
    assert np.array_equal(before, img.pixels)


def test_annotation_clipped_to_bounds(tmp_path, rng):
    img = random_image(rng, 8, 8)
    path = tmp_path / "c.png"
    save_image(img, path, rectangles=[(5, 5, 10, 10, (0, 0, 0))])  # exceeds bounds
    out = load_image(path)
    assert out.n_rows == 8 and out.n_cols == 8


def test_to_gray_trivial_values():
    px = np.array([[[255, 255, 255], [0, 0, 0], [255, 0, 0]]], dtype=np.uint8)
    tri, single = to_gray(ImageRGB(px))
    assert single.pixels[0, 0, 0] == 255
    assert single.pixels[0, 1, 0] == 0
    assert single.pixels[0, 2, 0] == 76  # round(0.299 * 255)
    assert np.array_equal(tri.pixels[..., 0], tri.pixels[..., 1])
    assert np.array_equal(tri.pixels[..., 0], tri.pixels[..., 2])


def test_to_gray_permutation_sensitive():
    red = ImageRGB(np.array([[[255, 0, 0]]], dtype=np.uint8))
    blue = ImageRGB(np.array([[[0, 0, 255]]], dtype=np.uint8))
    assert to_gray(red)[1].pixels[0, 0, 0] != to_gray(blue)[1].pixels[0, 0, 0]


@given(st.tuples(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255)))
def test_to_gray_matches_formula(rgb):
    img = ImageRGB(np.array([[rgb]], dtype=np.uint8))
    _, single = to_gray(img)
    v = 0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2]
    expected = int(np.floor(v + 0.5))  # ties away from zero; values nonnegative
    assert single.pixels[0, 0, 0] == min(expected, 255)


def test_integral_1x1():
    ii = integral_image(ImageRGB(np.array([[[5, 6, 7]]], dtype=np.uint8)))
    assert [rect_sum(ii, 0, 0, 1, 1, k) for k in range(3)] == [5, 6, 7]


def test_integral_all_ones_count():
    img = ImageRGB(np.ones((3, 4, 1), dtype=np.uint8))
    ii = integral_image(img)
    assert rect_sum(ii, 0, 0, 3, 4, 0) == 12


def test_integral_zero_border():
    img = ImageRGB(np.ones((3, 4, 3), dtype=np.uint8))
    ii = integral_image(img)
    assert (ii.table[0, :, :] == 0).all()
    assert (ii.table[:, 0, :] == 0).all()


def test_rect_sum_empty_window(rng):
    ii = integral_image(random_image(rng, 5, 5))
    assert rect_sum(ii, 2, 2, 0, 3, 0) == 0
    assert rect_sum(ii, 2, 2, 3, 0, 1) == 0


def test_rect_sum_out_of_bounds(rng):
    ii = integral_image(random_image(rng, 5, 5))
    with pytest.raises(IndexError):
        rect_sum(ii, 3, 3, 3, 3, 0)


def test_rect_sum_vs_brute_force(rng):
    for _ in range(50):
        img = random_image(rng, 8, 8)
        ii = integral_image(img)
        px = img.pixels.astype(int)
        for _ in range(10):
            x, y = rng.integers(0, 8, 2)
            h = int(rng.integers(0, 8 - x + 1))
            w = int(rng.integers(0, 8 - y + 1))
            k = int(rng.integers(0, 3))
            brute = sum(
                px[x + i, y + j, k] for i in range(h) for j in range(w)
            )
            assert rect_sum(ii, int(x), int(y), h, w, k) == brute


def test_rect_sum_additive(rng):
    img = random_image(rng, 6, 9)
    ii = integral_image(img)
    for y_split in range(1, 8):
        left = rect_sum(ii, 1, 0, 4, y_split, 2)
        right = rect_sum(ii, 1, y_split, 4, 9 - y_split, 2)
        assert left + right == rect_sum(ii, 1, 0, 4, 9, 2)
