"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from pdcipher.buffers import PixelBuffer


def make_natural_image(side=256):
    """Deterministic stand-in for a photographic test image.

    Smooth two-dimensional waves quantized to 8 bits: strongly correlated
    between neighbors (horizontal correlation above 0.99) with a spread-out
    but non-uniform histogram, which is what the statistical suite needs
    from a "natural" plaintext.
    """
    yy, xx = np.mgrid[0:side, 0:side].astype(np.float64)
    v = (
        np.sin(xx / 23.0)
        + np.cos(yy / 17.0)
        + np.sin((xx + yy) / 41.0)
        + 0.3 * np.sin(xx * yy / 9000.0)
    )
    v = (v - v.min()) / (v.max() - v.min())
    pixels = np.round(v * 255.0).astype(np.uint8)
    return PixelBuffer(pixels.ravel(), side, side)


@pytest.fixture(scope="session")
def natural_image():
    return make_natural_image(256)


def random_buffer(rng, width, height):
    pixels = rng.integers(0, 256, size=width * height, dtype=np.uint8)
    return PixelBuffer(pixels, width, height)
