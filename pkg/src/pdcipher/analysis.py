"""Statistical evaluation of cipher output.

Implements the differential metrics (NPCR, UACI), Shannon entropy over the
256-level histogram, adjacent-pixel correlation in three directions, and a
chi-square uniformity check of the histogram.  For two independent uniform
random images the expected NPCR is 255/256 = 99.6094% and the expected UACI
is about 33.4635%; a well-diffusing cipher should land near both.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import chi2

from .buffers import PixelBuffer
from .cipher import SecretKey, encrypt

DIRECTIONS = ("horizontal", "vertical", "diagonal")


def _check_same_shape(c1, c2):
    if (c1.width, c1.height) != (c2.width, c2.height):
        raise ValueError(
            f"dimension mismatch: {c1.width}x{c1.height} vs {c2.width}x{c2.height}"
        )


def npcr(c1: PixelBuffer, c2: PixelBuffer) -> float:
    """Percentage of positions whose pixel values differ."""
    _check_same_shape(c1, c2)
    return float(np.count_nonzero(c1.pixels != c2.pixels)) / c1.n * 100.0


def uaci(c1: PixelBuffer, c2: PixelBuffer) -> float:
    """Mean absolute pixel difference, normalized by 255, as a percentage."""
    _check_same_shape(c1, c2)
    diff = np.abs(c1.pixels.astype(np.int64) - c2.pixels.astype(np.int64))
    return float(diff.sum()) / (255.0 * c1.n) * 100.0


def histogram(img: PixelBuffer) -> np.ndarray:
    """Counts per gray level, 256 entries summing to n."""
    return np.bincount(img.pixels, minlength=256).astype(np.int64)


def shannon_entropy(img: PixelBuffer) -> float:
    """Empirical entropy in bits per pixel; 8.0 for an exactly uniform histogram."""
    counts = histogram(img)
    p = counts[counts > 0] / img.n
    return float(-(p * np.log2(p)).sum())


def adjacent_correlation(img: PixelBuffer, direction: str) -> Optional[float]:
    """Pearson correlation over all adjacent pixel pairs in one direction.

    direction is "horizontal", "vertical" or "diagonal" (down-right).  All
    available pairs are used, no sampling.  Returns None when either margin
    has zero variance (constant series), where the coefficient is undefined.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    arr = img.pixels.reshape(img.height, img.width).astype(np.float64)
    if direction == "horizontal":
        a, b = arr[:, :-1], arr[:, 1:]
    elif direction == "vertical":
        a, b = arr[:-1, :], arr[1:, :]
    else:
        a, b = arr[:-1, :-1], arr[1:, 1:]
    if a.size < 2:
        raise ValueError(
            f"image too small for {direction} pairs: {img.width}x{img.height}"
        )
    x = a.ravel()
    y = b.ravel()
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float((dx * dx).mean())
    vy = float((dy * dy).mean())
    if vx == 0.0 or vy == 0.0:
        return None
    cov = float((dx * dy).mean())
    return cov / np.sqrt(vx * vy)


@dataclass(frozen=True)
class ChiSquareResult:
    """Histogram uniformity test at significance alpha, 255 degrees of freedom."""

    statistic: float
    critical: float
    alpha: float
    passed: bool


def chi_square_uniformity(img: PixelBuffer, alpha: float = 0.01) -> ChiSquareResult:
    """Chi-square test of the histogram against the uniform distribution."""
    counts = histogram(img)
    expected = img.n / 256.0
    stat = float(((counts - expected) ** 2 / expected).sum())
    critical = float(chi2.ppf(1.0 - alpha, 255))
    return ChiSquareResult(stat, critical, alpha, stat <= critical)


def perturb_one_pixel(plain: PixelBuffer, position: int) -> PixelBuffer:
    """Copy with pixel at `position` incremented, or set to 254 if it is 255."""
    pixels = plain.pixels.copy()
    v = int(pixels[position])
    pixels[position] = v + 1 if v < 255 else 254
    return plain.replace_pixels(pixels)


def differential_test(
    plain: PixelBuffer, key: SecretKey, trials: int, seed=None
) -> tuple[float, float]:
    """Mean (NPCR, UACI) between ciphertexts of one-pixel-perturbed inputs.

    Each trial perturbs a uniformly random position of `plain` and compares
    the perturbed ciphertext against the base one.  The base ciphertext is
    computed once; encryption is a pure function, so re-encrypting the same
    plain image every trial would produce the same bytes.

    `seed` feeds a local generator so experiments are reproducible; it has
    no influence on the cipher itself.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    base = encrypt(plain, key)
    npcr_sum = 0.0
    uaci_sum = 0.0
    for _ in range(trials):
        pos = int(rng.integers(0, plain.n))
        other = encrypt(perturb_one_pixel(plain, pos), key)
        npcr_sum += npcr(base, other)
        uaci_sum += uaci(base, other)
    return npcr_sum / trials, uaci_sum / trials


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Metrics of one experiment; pair metrics are None without a reference."""

    entropy: float
    corr_h: Optional[float]
    corr_v: Optional[float]
    corr_d: Optional[float]
    histogram: np.ndarray
    npcr: Optional[float] = None
    uaci: Optional[float] = None

    def _metric_rows(self):
        rows = [
            ("entropy", self.entropy),
            ("corr_horizontal", self.corr_h),
            ("corr_vertical", self.corr_v),
            ("corr_diagonal", self.corr_d),
        ]
        if self.npcr is not None:
            rows.append(("npcr", self.npcr))
        if self.uaci is not None:
            rows.append(("uaci", self.uaci))
        return rows

    def to_text(self) -> str:
        lines = []
        for name, value in self._metric_rows():
            shown = "undefined" if value is None else f"{value:.6f}"
            lines.append(f"{name:>16}: {shown}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        """Metric rows `name,value`, then 256 histogram rows `value,count`."""
        lines = []
        for name, value in self._metric_rows():
            shown = "" if value is None else f"{value:.10g}"
            lines.append(f"{name},{shown}")
        for level, count in enumerate(self.histogram):
            lines.append(f"{level},{int(count)}")
        return "\n".join(lines) + "\n"


def _correlation_or_none(img, direction):
    try:
        return adjacent_correlation(img, direction)
    except ValueError:
        return None


def analyze(img: PixelBuffer, reference: Optional[PixelBuffer] = None) -> AnalysisReport:
    """Full report for one image; add `reference` for the pair metrics."""
    report_npcr = report_uaci = None
    if reference is not None:
        report_npcr = npcr(img, reference)
        report_uaci = uaci(img, reference)
    return AnalysisReport(
        entropy=shannon_entropy(img),
        corr_h=_correlation_or_none(img, "horizontal"),
        corr_v=_correlation_or_none(img, "vertical"),
        corr_d=_correlation_or_none(img, "diagonal"),
        histogram=histogram(img),
        npcr=report_npcr,
        uaci=report_uaci,
    )
