import numpy as np
import pytest

from qcharid import (
    DomainError,
    FormatError,
    GrayImage,
    downsample_avg,
    load_pgm,
    match_percent,
    quantize,
    save_pgm,
    segment_projection,
    threshold,
    upscale_repeat,
)


def random_image(rng, h=8, w=8):
    return GrayImage(rng.uniform(0, 1, size=(h, w)))


class TestGrayImage:
    def test_validates_range(self):
        with pytest.raises(DomainError):
            GrayImage(np.array([[0.0, 1.5]]))
        with pytest.raises(DomainError):
            GrayImage(np.array([[-0.1]]))

    def test_validates_shape(self):
        with pytest.raises(DomainError):
            GrayImage(np.zeros(4))


class TestPgm:
    def test_ascii_single_white_pixel(self):
        img = load_pgm(b"P2\n1 1\n255\n255\n")
        assert img.pixels[0, 0] == 1.0

    def test_binary_round_trip_is_canonical(self):
        rng = np.random.default_rng(1)
        img = random_image(rng)
        data = save_pgm(img, "P5")
        assert save_pgm(load_pgm(data), "P5") == data

    def test_ascii_round_trip(self):
        rng = np.random.default_rng(2)
        img = random_image(rng)
        data = save_pgm(img, "P2")
        assert save_pgm(load_pgm(data), "P2") == data

    def test_load_save_equals_quantize(self):
        rng = np.random.default_rng(3)
        img = random_image(rng)
        back = load_pgm(save_pgm(img, "P5"))
        assert np.array_equal(back.pixels, quantize(img).pixels)

    def test_half_rounds_away_from_zero(self):
        img = GrayImage(np.array([[0.5]]))
        raw = save_pgm(img, "P5")
        assert raw.endswith(bytes([128]))  # round(127.5) -> 128

    def test_all_raw_values_survive(self):
        raw = bytes(range(256))
        data = b"P5\n16 16\n255\n" + raw
        assert save_pgm(load_pgm(data), "P5") == data

    def test_comments_allowed_after_magic(self):
        img = load_pgm(b"P2\n# a comment\n2 1 # trailing\n255\n0 255\n")
        assert list(img.pixels[0]) == [0.0, 1.0]

    def test_bad_magic(self):
        with pytest.raises(FormatError) as err:
            load_pgm(b"P7\n1 1\n255\n\x00")
        assert err.value.offset == 0

    def test_bad_maxval(self):
        with pytest.raises(FormatError) as err:
            load_pgm(b"P2\n1 1\n65535\n0\n")
        assert "maxval" in str(err.value)

    def test_truncated_raster(self):
        with pytest.raises(FormatError) as err:
            load_pgm(b"P5\n2 2\n255\nab")
        assert "truncated" in str(err.value)

    def test_truncated_header(self):
        with pytest.raises(FormatError):
            load_pgm(b"P2\n4")

    def test_pixel_above_maxval_in_ascii(self):
        with pytest.raises(FormatError):
            load_pgm(b"P2\n1 1\n255\n300\n")

    def test_quantize_idempotent(self):
        rng = np.random.default_rng(4)
        img = random_image(rng)
        once = quantize(img)
        assert np.array_equal(quantize(once).pixels, once.pixels)


class TestPooling:
    def test_block_mean(self):
        img = GrayImage(np.array([[0.0, 1.0], [1.0, 0.0]]))
        out = downsample_avg(img, 2)
        assert out.pixels[0, 0] == 0.5

    def test_identity_at_one(self):
        rng = np.random.default_rng(5)
        img = random_image(rng)
        assert np.array_equal(downsample_avg(img, 1).pixels, img.pixels)

    def test_constant_image(self):
        img = GrayImage(np.full((4, 4), 0.25))
        assert np.allclose(downsample_avg(img, 2).pixels, 0.25)

    def test_divisibility(self):
        with pytest.raises(DomainError):
            downsample_avg(GrayImage(np.zeros((3, 4))), 2)

    def test_upscale_single_pixel(self):
        out = upscale_repeat(GrayImage(np.array([[0.3]])), 2)
        assert out.pixels.shape == (2, 2)
        assert np.all(out.pixels == 0.3)

    def test_upscale_identity_at_one(self):
        rng = np.random.default_rng(6)
        img = random_image(rng)
        assert np.array_equal(upscale_repeat(img, 1).pixels, img.pixels)

    def test_pool_after_repeat_is_identity(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 4):
            img = random_image(rng)
            round_trip = downsample_avg(upscale_repeat(img, n), n)
            assert np.allclose(round_trip.pixels, img.pixels, atol=1e-15)


class TestThreshold:
    def test_below_goes_black(self):
        assert threshold(GrayImage(np.array([[0.4]])), 0.5).pixels[0, 0] == 0.0

    def test_boundary_goes_white(self):
        assert threshold(GrayImage(np.array([[0.5]])), 0.5).pixels[0, 0] == 1.0

    def test_all_white_stays_white(self):
        img = GrayImage(np.ones((3, 3)))
        assert np.all(threshold(img, 1.0).pixels == 1.0)

    def test_range_check(self):
        with pytest.raises(DomainError):
            threshold(GrayImage(np.ones((2, 2))), 1.5)

    def test_idempotent_bitonal(self):
        rng = np.random.default_rng(8)
        img = random_image(rng)
        out = threshold(threshold(img, 0.5), 0.3)
        assert set(np.unique(out.pixels)) <= {0.0, 1.0}


class TestSegmentation:
    def test_blank_image(self):
        assert segment_projection(GrayImage(np.ones((4, 4))), 0.5) == []

    def test_single_dark_column(self):
        p = np.ones((5, 8))
        p[1:4, 3] = 0.0
        boxes = segment_projection(GrayImage(p), 0.5)
        assert len(boxes) == 1
        box = boxes[0]
        assert (box.x0, box.x1) == (3, 4)
        assert (box.y0, box.y1) == (1, 4)

    def test_two_glyphs(self):
        p = np.ones((6, 10))
        p[1:5, 1:3] = 0.0   # left glyph
        p[2:4, 6:9] = 0.0   # right glyph
        boxes = segment_projection(GrayImage(p), 0.5)
        assert len(boxes) == 2
        assert (boxes[0].x0, boxes[0].x1, boxes[0].y0, boxes[0].y1) == (1, 3, 1, 5)
        assert (boxes[1].x0, boxes[1].x1, boxes[1].y0, boxes[1].y1) == (6, 9, 2, 4)

    def test_threshold_validation(self):
        with pytest.raises(DomainError):
            segment_projection(GrayImage(np.ones((2, 2))), 1.0)


class TestMatchPercent:
    def test_self_is_one(self):
        rng = np.random.default_rng(9)
        img = random_image(rng)
        assert match_percent(img, img) == 1.0

    def test_black_vs_white(self):
        black = GrayImage(np.zeros((4, 4)))
        white = GrayImage(np.ones((4, 4)))
        assert match_percent(black, white) == 0.0

    def test_arithmetic(self):
        x = GrayImage(np.array([[0.0, 0.5]]))
        y = GrayImage(np.array([[1.0, 0.5]]))
        assert match_percent(x, y) == pytest.approx(0.5)

    def test_symmetric(self):
        rng = np.random.default_rng(10)
        a, b = random_image(rng), random_image(rng)
        assert match_percent(a, b) == pytest.approx(match_percent(b, a))

    def test_one_iff_identical(self):
        rng = np.random.default_rng(11)
        a = random_image(rng)
        tweaked = a.pixels.copy()
        tweaked[0, 0] = (tweaked[0, 0] + 0.5) % 1.0
        assert match_percent(a, GrayImage(tweaked)) < 1.0

    def test_complement_triangle_inequality(self):
        rng = np.random.default_rng(12)
        for _ in range(25):
            a, b, c = (random_image(rng, 4, 4) for _ in range(3))
            dab = 1 - match_percent(a, b)
            dbc = 1 - match_percent(b, c)
            dac = 1 - match_percent(a, c)
            assert dac <= dab + dbc + 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            match_percent(GrayImage(np.ones((2, 2))), GrayImage(np.ones((2, 3))))
