"""Wall-time benchmark of encrypt/decrypt, optionally across both backends."""

import time
from dataclasses import dataclass

import numpy as np

from . import backend
from .buffers import PixelBuffer
from .cipher import SecretKey, decrypt, encrypt

DEFAULT_SIZES = (256, 512, 1024)
DEFAULT_REPS = 10
DEFAULT_KEY = SecretKey(3.0, 4.0, 5.0, 3.999)


@dataclass(frozen=True)
class BenchRow:
    """Mean timings for one (image side, backend) combination."""

    side: int
    pixels: int
    backend: str
    reps: int
    encrypt_s: float
    decrypt_s: float

    @property
    def encrypt_mpix_s(self):
        return self.pixels / self.encrypt_s / 1e6

    @property
    def decrypt_mpix_s(self):
        return self.pixels / self.decrypt_s / 1e6


def random_image(side: int, seed=0) -> PixelBuffer:
    rng = np.random.default_rng(seed)
    pixels = rng.integers(0, 256, size=side * side, dtype=np.uint8)
    return PixelBuffer(pixels, side, side)


def run(
    sizes=DEFAULT_SIZES,
    reps=DEFAULT_REPS,
    key=DEFAULT_KEY,
    backends=("auto",),
    seed=0,
):
    """Time `reps` encrypt and decrypt calls per size per backend.

    Returns a list of BenchRow.  One untimed warm-up round runs first for
    every combination so JIT compilation cost never lands in the means.
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    rows = []
    for requested in backends:
        with backend.use(requested):
            name = backend.selected()
            for side in sizes:
                img = random_image(side, seed=seed)
                ct = encrypt(img, key)
                decrypt(ct, key)
                t0 = time.perf_counter()
                for _ in range(reps):
                    ct = encrypt(img, key)
                t1 = time.perf_counter()
                for _ in range(reps):
                    decrypt(ct, key)
                t2 = time.perf_counter()
                rows.append(
                    BenchRow(
                        side=side,
                        pixels=side * side,
                        backend=name,
                        reps=reps,
                        encrypt_s=(t1 - t0) / reps,
                        decrypt_s=(t2 - t1) / reps,
                    )
                )
    return rows


def to_csv(rows) -> str:
    lines = ["side,pixels,backend,reps,encrypt_s,decrypt_s,encrypt_mpix_s,decrypt_mpix_s"]
    for row in rows:
        lines.append(
            f"{row.side},{row.pixels},{row.backend},{row.reps},"
            f"{row.encrypt_s:.6f},{row.decrypt_s:.6f},"
            f"{row.encrypt_mpix_s:.3f},{row.decrypt_mpix_s:.3f}"
        )
    return "\n".join(lines) + "\n"
