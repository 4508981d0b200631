"""Data-seeded permutation stage.

The permutation order is derived from the pixel data itself: the logistic
map is seeded with sum / (n * max), a quantity that is invariant under any
reordering of the pixels.  Decryption can therefore recompute the seed from
the un-diffused (still permuted) buffer and regenerate the same sequence.
Two plaintexts with different sums get different seeds, hence different
permutations.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .buffers import PixelBuffer
from .chaos import LogisticParams


@dataclass(frozen=True)
class PermutationSeed:
    """Logistic seed y0 in [0, 1] computed from pixel data."""

    y0: float

    @property
    def degenerate(self):
        """True when the seed carries no information (constant input)."""
        return self.y0 == 0.0 or self.y0 == 1.0


@dataclass(frozen=True, eq=False)
class PermutationSequence:
    """A bijection on {1..n} plus the logistic iteration count that built it."""

    indices: np.ndarray
    iterations_used: int

    def __post_init__(self):
        idx = self.indices
        if not isinstance(idx, np.ndarray) or idx.dtype != np.int64 or idx.ndim != 1:
            raise ValueError("indices must be a 1-D int64 array")

    @property
    def n(self):
        return self.indices.shape[0]


def iteration_budget(n: int) -> int:
    """Hard cap on logistic iterations: ceil(50 * n * ln(n + 2)).

    The trajectory of the logistic map with mu noticeably below 4 cannot
    reach cells near the ends of [1, n] once n is large (its attractor is an
    interior interval), so the collection loop would otherwise never finish.
    Exhausting the budget triggers a deterministic fill of the remaining
    cells, identical during encryption and decryption.
    """
    return math.ceil(50.0 * n * math.log(n + 2))


def compute_seed(data: PixelBuffer) -> PermutationSeed:
    """Seed sum / (n * max); 0 for an all-zero buffer.

    Both sum and max are exact integers, so the quotient is a single
    correctly rounded division and the seed is bit-identical no matter how
    the pixels are ordered.
    """
    m = int(data.pixels.max())
    if m == 0:
        return PermutationSeed(0.0)
    s = int(data.pixels.sum(dtype=np.int64))
    return PermutationSeed(s / (data.n * m))


def generate_sequence(
    seed: PermutationSeed, n: int, params: LogisticParams
) -> PermutationSequence:
    """Grow the index sequence coupon-collector style from the seed.

    Each logistic iterate y proposes cell ceil(y*n) (clamped into [1, n]);
    a cell is accepted the first time it appears.  The loop runs until all
    n cells are placed or the iteration budget is exhausted, in which case
    the unused cells are appended in ascending order.
    """
    if n < 1:
        raise ValueError(f"sequence length must be at least 1, got {n}")
    if seed.degenerate:
        raise ValueError(
            "degenerate seed (constant input); caller must skip permutation"
        )
    out = np.empty(n, dtype=np.int64)
    iters = backend.active().build_permutation(
        seed.y0, params.mu, n, iteration_budget(n), out
    )
    return PermutationSequence(out, int(iters))


def apply(data: PixelBuffer, perm: PermutationSequence) -> PixelBuffer:
    """Gather pixels through the sequence: output_i = input_{s_i}."""
    if perm.n != data.n:
        raise ValueError(f"length mismatch: {data.n} pixels vs {perm.n} indices")
    return data.replace_pixels(data.pixels[perm.indices - 1])


def invert(data: PixelBuffer, perm: PermutationSequence) -> PixelBuffer:
    """Scatter pixels back: output_{s_i} = input_i, undoing apply()."""
    if perm.n != data.n:
        raise ValueError(f"length mismatch: {data.n} pixels vs {perm.n} indices")
    out = np.empty_like(data.pixels)
    out[perm.indices - 1] = data.pixels
    return data.replace_pixels(out)
