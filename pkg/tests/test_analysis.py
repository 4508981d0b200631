"""Statistical metrics: NPCR/UACI, entropy, correlation, histogram, chi-square."""

import numpy as np
import pytest

from conftest import make_natural_image
from pdcipher.analysis import (
    adjacent_correlation,
    analyze,
    chi_square_uniformity,
    differential_test,
    histogram,
    npcr,
    perturb_one_pixel,
    shannon_entropy,
    uaci,
)
from pdcipher.buffers import PixelBuffer
from pdcipher.cipher import SecretKey, encrypt

KEY = SecretKey(3.0, 4.0, 5.0, 3.999)


def buf(values, width=None, height=1):
    arr = np.asarray(values, dtype=np.uint8)
    return PixelBuffer(arr, width or arr.size, height)


def random_pair(seed, n=65536):
    rng = np.random.default_rng(seed)
    a = PixelBuffer(rng.integers(0, 256, n, dtype=np.uint8), 256, 256)
    b = PixelBuffer(rng.integers(0, 256, n, dtype=np.uint8), 256, 256)
    return a, b


class TestNpcrUaci:
    def test_identical_images(self):
        a = buf([1, 2, 3, 4])
        assert npcr(a, a) == 0.0
        assert uaci(a, a) == 0.0

    def test_everywhere_different(self):
        a = buf([0, 0, 0])
        b = buf([1, 2, 3])
        assert npcr(a, b) == 100.0

    def test_full_scale_uaci(self):
        a = buf([0, 0, 0, 0])
        b = buf([255, 255, 255, 255])
        assert uaci(a, b) == 100.0

    def test_independent_uniform_expectations(self):
        a, b = random_pair(31)
        assert npcr(a, b) == pytest.approx(99.6094, abs=0.3)
        assert uaci(a, b) == pytest.approx(33.4635, abs=0.8)

    def test_symmetry(self):
        rng = np.random.default_rng(32)
        a = PixelBuffer(rng.integers(0, 256, 4096, dtype=np.uint8), 64, 64)
        b = PixelBuffer(rng.integers(0, 256, 4096, dtype=np.uint8), 64, 64)
        assert npcr(a, b) == npcr(b, a)
        assert uaci(a, b) == uaci(b, a)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            npcr(buf([1, 2]), buf([1, 2], width=1, height=2))
        with pytest.raises(ValueError):
            uaci(buf([1, 2, 3]), buf([1, 2]))


class TestEntropy:
    def test_constant_image(self):
        assert shannon_entropy(buf([9] * 50)) == 0.0

    def test_exactly_uniform_histogram(self):
        pixels = np.tile(np.arange(256, dtype=np.uint8), 4)
        assert shannon_entropy(PixelBuffer(pixels, 32, 32)) == 8.0

    def test_uniform_random_close_to_eight(self):
        a, _ = random_pair(33)
        assert shannon_entropy(a) > 7.99

    def test_never_exceeds_eight(self):
        rng = np.random.default_rng(34)
        for _ in range(20):
            n = int(rng.integers(1, 2000))
            img = PixelBuffer(rng.integers(0, 256, n, dtype=np.uint8), n, 1)
            assert shannon_entropy(img) <= 8.0


class TestCorrelation:
    def test_alternating_row_is_anticorrelated(self):
        row = np.tile(np.array([0, 1], dtype=np.uint8), 8)
        img = PixelBuffer(np.tile(row, 4), 16, 4)
        assert adjacent_correlation(img, "horizontal") == pytest.approx(-1.0)

    def test_natural_image_strongly_correlated(self):
        img = make_natural_image(128)
        assert adjacent_correlation(img, "horizontal") > 0.8

    def test_cipher_image_nearly_uncorrelated(self):
        ct = encrypt(make_natural_image(128), KEY)
        for direction in ("horizontal", "vertical", "diagonal"):
            assert abs(adjacent_correlation(ct, direction)) < 0.05

    def test_constant_returns_none(self):
        img = buf([7] * 16, width=4, height=4)
        assert adjacent_correlation(img, "horizontal") is None

    def test_bounds(self):
        rng = np.random.default_rng(35)
        img = PixelBuffer(rng.integers(0, 256, 400, dtype=np.uint8), 20, 20)
        for direction in ("horizontal", "vertical", "diagonal"):
            c = adjacent_correlation(img, direction)
            assert -1.0 <= c <= 1.0

    def test_direction_validation(self):
        img = buf([1, 2, 3, 4], width=2, height=2)
        with pytest.raises(ValueError):
            adjacent_correlation(img, "antidiagonal")

    def test_too_small(self):
        with pytest.raises(ValueError):
            adjacent_correlation(buf([1, 2], width=2, height=1), "horizontal")
        with pytest.raises(ValueError):
            adjacent_correlation(buf([1], width=1, height=1), "vertical")


class TestHistogram:
    def test_constant(self):
        counts = histogram(buf([100] * 30))
        assert counts[100] == 30
        assert counts.sum() == 30

    def test_sums_to_n(self):
        rng = np.random.default_rng(36)
        img = PixelBuffer(rng.integers(0, 256, 999, dtype=np.uint8), 999, 1)
        assert histogram(img).sum() == 999

    def test_chi_square_uniform_passes(self):
        a, _ = random_pair(37)
        result = chi_square_uniformity(a)
        assert result.passed
        assert result.critical == pytest.approx(310.457, abs=0.01)

    def test_chi_square_constant_fails(self):
        img = buf([5] * 4096, width=64, height=64)
        assert not chi_square_uniformity(img).passed

    def test_cipher_histogram_uniform(self):
        ct = encrypt(make_natural_image(256), KEY)
        assert chi_square_uniformity(ct).passed


class TestDifferential:
    def test_perturb_increments(self):
        img = buf([10, 20, 30])
        assert perturb_one_pixel(img, 1).pixels.tolist() == [10, 21, 30]

    def test_perturb_at_255_wraps_to_254(self):
        img = buf([255, 0])
        assert perturb_one_pixel(img, 0).pixels.tolist() == [254, 0]

    def test_single_trial_smoke(self):
        img = make_natural_image(32)
        mean_npcr, mean_uaci = differential_test(img, KEY, trials=1, seed=0)
        assert mean_npcr > 90.0
        assert 0.0 < mean_uaci < 100.0

    def test_reproducible_with_seed(self):
        rng = np.random.default_rng(38)
        img = PixelBuffer(rng.integers(0, 256, 256, dtype=np.uint8), 16, 16)
        assert differential_test(img, KEY, 5, seed=7) == differential_test(
            img, KEY, 5, seed=7
        )

    def test_trials_validation(self):
        with pytest.raises(ValueError):
            differential_test(buf([1, 2]), KEY, trials=0)

    def test_standard_error_shrinks_with_trials(self):
        # quadrupling the trial count should roughly halve the spread of the
        # reported mean; image and key chosen without weak outlier positions
        rng = np.random.default_rng(5)
        img = PixelBuffer(rng.integers(0, 256, 256, dtype=np.uint8), 16, 16)
        small = [differential_test(img, KEY, trials=8, seed=1000 + i)[0] for i in range(30)]
        big = [differential_test(img, KEY, trials=32, seed=2000 + i)[0] for i in range(30)]
        ratio = np.std(small, ddof=1) / np.std(big, ddof=1)
        assert 1.3 < ratio < 2.8


class TestReport:
    def test_fields(self, natural_image):
        ct = encrypt(natural_image, KEY)
        report = analyze(ct, reference=natural_image)
        assert report.entropy > 7.9
        assert report.npcr is not None and report.uaci is not None
        assert report.histogram.sum() == ct.n

    def test_without_reference(self):
        report = analyze(make_natural_image(32))
        assert report.npcr is None and report.uaci is None

    def test_csv_layout(self):
        report = analyze(make_natural_image(32))
        lines = report.to_csv().strip().split("\n")
        # metric rows followed by one row per gray level
        assert lines[0].startswith("entropy,")
        assert len(lines) == 4 + 256
        assert lines[-1].startswith("255,")

    def test_text_contains_metrics(self):
        report = analyze(make_natural_image(32))
        text = report.to_text()
        assert "entropy" in text and "corr_horizontal" in text

    def test_undefined_correlation_serializes(self):
        report = analyze(buf([3] * 16, width=4, height=4))
        assert "undefined" in report.to_text()
        assert "corr_horizontal," in report.to_csv()
