"""Key handling and the encrypt / decrypt pipelines.

Encryption runs three stages over a raster-ordered buffer:

1. a keystream of n + 4 bytes is generated from the key's (x, y, z);
2. the pixels are permuted by a sequence seeded from the data itself
   (skipped for constant images, whose seed is degenerate);
3. two feedback diffusion passes (forward then backward) mix values.

Decryption inverts the stages in reverse order.  The permutation seed is
recomputed from the un-diffused buffer, which works because the seed is
invariant under reordering.  Every stage is a bijection for a fixed key, so
decrypt(encrypt(p)) == p holds for all inputs.
"""

import math
from dataclasses import dataclass

from .buffers import PixelBuffer
from .chaos import MU_HIGH, MU_LOW, LogisticParams, generate_keystream
from .diffusion import (
    DiffusionContext,
    diffuse_backward,
    diffuse_forward,
    undiffuse_backward,
    undiffuse_forward,
)
from .errors import InvalidKeyError
from .permutation import apply as permute
from .permutation import compute_seed, generate_sequence
from .permutation import invert as unpermute

# Each key component carries this many significant decimal digits; the
# serialized form below and the key-space accounting both rely on it.
KEY_DIGITS = 15
KEY_COMPONENTS = 4


@dataclass(frozen=True)
class SecretKey:
    """The four-component key: Chen initial condition plus logistic mu."""

    x: float
    y: float
    z: float
    mu: float

    def __post_init__(self):
        for name in ("x", "y", "z", "mu"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise InvalidKeyError(f"key component {name} must be a real number")
            if not math.isfinite(v):
                raise InvalidKeyError(f"key component {name} must be finite, got {v!r}")
        if not MU_LOW < self.mu < MU_HIGH:
            raise InvalidKeyError(
                f"mu must lie strictly in ({MU_LOW}, {MU_HIGH}), got {self.mu!r}"
            )


def encrypt(plain: PixelBuffer, key: SecretKey) -> PixelBuffer:
    """Encrypt a buffer; dimensions are preserved.

    Raises InvalidKeyError for a bad key and IntegrationDivergenceError if
    the trajectory from (x, y, z) blows up.
    """
    params = LogisticParams(key.mu)
    ks = generate_keystream(key, plain.n)
    seed = compute_seed(plain)
    if seed.degenerate:
        shuffled = plain
    else:
        shuffled = permute(plain, generate_sequence(seed, plain.n, params))
    ctx = DiffusionContext(ks, params)
    return diffuse_backward(diffuse_forward(shuffled, ctx), ctx)


def decrypt(cipher: PixelBuffer, key: SecretKey) -> PixelBuffer:
    """Invert encrypt() under the same key."""
    params = LogisticParams(key.mu)
    ks = generate_keystream(key, cipher.n)
    ctx = DiffusionContext(ks, params)
    shuffled = undiffuse_forward(undiffuse_backward(cipher, ctx), ctx)
    seed = compute_seed(shuffled)
    if seed.degenerate:
        return shuffled
    return unpermute(shuffled, generate_sequence(seed, cipher.n, params))


def key_space_report() -> int:
    """Nominal key-space cardinality: 10^15 per component, 4 components."""
    return (10 ** KEY_DIGITS) ** KEY_COMPONENTS


def format_key(key: SecretKey) -> str:
    """Serialize as one line `x y z mu` with 15 significant digits each."""
    return " ".join(
        f"{v:.{KEY_DIGITS}g}" for v in (key.x, key.y, key.z, key.mu)
    )


def parse_key(text: str) -> SecretKey:
    """Parse the `x y z mu` form produced by format_key.

    Raises InvalidKeyError on anything other than four finite decimal
    literals with mu inside its open interval.
    """
    parts = text.split()
    if len(parts) != KEY_COMPONENTS:
        raise InvalidKeyError(
            f"expected {KEY_COMPONENTS} components `x y z mu`, got {len(parts)}"
        )
    values = []
    for part in parts:
        try:
            values.append(float(part))
        except ValueError:
            raise InvalidKeyError(f"not a decimal literal: {part!r}") from None
    return SecretKey(*values)


def load_key_file(path) -> SecretKey:
    """Read a key from a text file holding a single `x y z mu` line."""
    with open(path, "r", encoding="ascii") as fh:
        return parse_key(fh.read())
