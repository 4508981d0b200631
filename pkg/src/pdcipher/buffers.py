"""Raster-ordered pixel storage shared by every stage of the pipeline."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class PixelBuffer:
    """A gray image flattened to one dimension in row-major order.

    Index i maps to row i // width, column i % width, origin at the top
    left.  The pixel array is treated as immutable by the whole package;
    callers must not modify it after construction.

    Attributes
    ----------
    pixels : numpy.ndarray
        One-dimensional uint8 array of length width * height.
    width, height : int
        Image dimensions, both at least 1.
    """

    pixels: np.ndarray
    width: int
    height: int

    def __post_init__(self):
        px = self.pixels
        if not isinstance(px, np.ndarray) or px.dtype != np.uint8 or px.ndim != 1:
            raise ValueError("pixels must be a 1-D uint8 numpy array")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"invalid dimensions {self.width}x{self.height}")
        if px.shape[0] != self.width * self.height:
            raise ValueError(
                f"pixel count {px.shape[0]} does not match "
                f"{self.width}x{self.height}"
            )

    @property
    def n(self):
        """Number of pixels."""
        return self.pixels.shape[0]

    @classmethod
    def from_array(cls, arr):
        """Build a buffer from a 2-D array shaped (height, width)."""
        a = np.asarray(arr)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        if a.dtype != np.uint8:
            if np.any((a < 0) | (a > 255)):
                raise ValueError("pixel values must lie in [0, 255]")
            a = a.astype(np.uint8)
        h, w = a.shape
        return cls(np.ascontiguousarray(a).ravel(), w, h)

    def to_array(self):
        """Return the pixels as a fresh (height, width) uint8 array."""
        return self.pixels.reshape(self.height, self.width).copy()

    def replace_pixels(self, pixels):
        """Same dimensions, new pixel data."""
        return PixelBuffer(pixels, self.width, self.height)
