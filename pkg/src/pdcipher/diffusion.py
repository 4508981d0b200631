"""Two-pass feedback diffusion and its exact inverses.

Each pass walks the buffer once (forward, then backward), deriving a fresh
pair of 9-bit round keys for every pixel from one keystream byte and one
feedback byte: during encryption the feedback byte is the previous plaintext
pixel (forward pass) or the next intermediate pixel (backward pass).  The
output pixel chains in the previous output through modulo-256 addition, so a
change at any position propagates to every later position of the pass; the
two opposite directions together spread it to the whole buffer.

Pixel values and keystream bytes are small integers, so the seed quotient
(a + 127)/(b + 255) is a single exact division and the whole construction
is reproducible bit for bit.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .buffers import PixelBuffer
from .chaos import Keystream, LogisticParams, logistic_step

# The seed quotient is at most 382/510, so it and its two logistic iterates
# all stay strictly inside (0, 1).
_QUANT_SCALE = 1e8


@dataclass(frozen=True)
class RoundKeys:
    """Per-pixel 9-bit key pair (r drives the value, r_prime the chain)."""

    r: int
    r_prime: int

    def __post_init__(self):
        for v in (self.r, self.r_prime):
            if not 0 <= v <= 511:
                raise ValueError(f"round key out of [0, 511]: {v}")


@dataclass(frozen=True, eq=False)
class DiffusionContext:
    """Keystream plus logistic parameter bound to one image size."""

    keystream: Keystream
    params: LogisticParams
    n: int = None

    def __post_init__(self):
        if self.n is None:
            object.__setattr__(self, "n", self.keystream.n)
        elif self.n != self.keystream.n:
            raise ValueError(
                f"keystream holds {len(self.keystream)} bytes but the "
                f"context claims n={self.n} (needs n+4)"
            )


def derive_r0(a: int, b: int) -> float:
    """Fold two bytes into a logistic seed in (0, 1).

    Branches on a <= b so the same unordered pair always lands on the same
    quotient shape: (min + 127) / (max + 255).
    """
    for v, name in ((a, "a"), (b, "b")):
        if not 0 <= v <= 255:
            raise ValueError(f"{name} must lie in [0, 255], got {v}")
    if a <= b:
        return (a + 127) / (b + 255)
    return (b + 127) / (a + 255)


def derive_round_keys(r0: float, params: LogisticParams) -> RoundKeys:
    """Two logistic iterates from r0, each quantized to 9 bits.

    The quantizer is floor(v * 1e8) mod 512, the 9-bit variant of the
    keystream byte map.
    """
    if not 0.0 < r0 < 1.0:
        raise ValueError(f"r0 must lie strictly in (0, 1), got {r0!r}")
    rh = logistic_step(r0, params)
    rh2 = logistic_step(rh, params)
    r = math.floor(rh * _QUANT_SCALE) % 512
    r_prime = math.floor(rh2 * _QUANT_SCALE) % 512
    return RoundKeys(r, r_prime)


def _run_pass(kernel_name, buf, ctx):
    if buf.n != ctx.n:
        raise ValueError(f"buffer holds {buf.n} pixels, context expects {ctx.n}")
    data = buf.pixels.astype(np.int64)
    out = np.empty(ctx.n, dtype=np.int64)
    kernel = getattr(backend.active(), kernel_name)
    kernel(data, ctx.keystream.values, ctx.params.mu, out)
    return buf.replace_pixels(out.astype(np.uint8))


def diffuse_forward(buf: PixelBuffer, ctx: DiffusionContext) -> PixelBuffer:
    """First (left-to-right) diffusion pass."""
    return _run_pass("diffuse_forward", buf, ctx)


def diffuse_backward(buf: PixelBuffer, ctx: DiffusionContext) -> PixelBuffer:
    """Second (right-to-left) diffusion pass."""
    return _run_pass("diffuse_backward", buf, ctx)


def undiffuse_forward(buf: PixelBuffer, ctx: DiffusionContext) -> PixelBuffer:
    """Inverse of diffuse_forward."""
    return _run_pass("undiffuse_forward", buf, ctx)


def undiffuse_backward(buf: PixelBuffer, ctx: DiffusionContext) -> PixelBuffer:
    """Inverse of diffuse_backward."""
    return _run_pass("undiffuse_backward", buf, ctx)
