"""Single-round permutation-diffusion cipher for 8-bit gray images.

A chaotic flow supplies the keystream, the permutation order is seeded from
the plaintext itself, and two feedback diffusion passes spread every input
change across the whole output.  Decryption is exact.  The `analysis`
module measures the standard statistical properties (NPCR, UACI, entropy,
correlation, histogram uniformity); `bench` times the kernels, which run
compiled via numba or as pure Python (see `backend`).
"""

from .buffers import PixelBuffer
from .chaos import Keystream, LogisticParams, generate_keystream
from .cipher import (
    SecretKey,
    decrypt,
    encrypt,
    format_key,
    key_space_report,
    load_key_file,
    parse_key,
)
from .errors import (
    CipherError,
    IntegrationDivergenceError,
    InvalidKeyError,
    PgmFormatError,
)
from .imageio import read_pgm, write_pgm

__version__ = "0.1.0"

__all__ = [
    "PixelBuffer",
    "Keystream",
    "LogisticParams",
    "generate_keystream",
    "SecretKey",
    "encrypt",
    "decrypt",
    "format_key",
    "parse_key",
    "load_key_file",
    "key_space_report",
    "CipherError",
    "InvalidKeyError",
    "IntegrationDivergenceError",
    "PgmFormatError",
    "read_pgm",
    "write_pgm",
    "__version__",
]
