"""Binary PGM (P5) reading and writing.

Only 8-bit binary PGM is supported: it is the smallest container that maps
one-to-one onto the raster-ordered buffer, with no compression or filtering
to disturb bit-exactness.  The writer emits the canonical header
``P5\\n<w> <h>\\n255\\n`` followed by the raw pixel bytes; the reader accepts
any standards-conforming header, including ``#`` comments.
"""

import numpy as np

from .buffers import PixelBuffer
from .errors import PgmFormatError

_WHITESPACE = b" \t\r\n\v\f"


def _next_token(data, pos):
    """Scan past whitespace and # comments; return (token, new position)."""
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c in (b"#",):
            while pos < n and data[pos : pos + 1] != b"\n":
                pos += 1
        elif c in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise PgmFormatError("unexpected end of header", offset=pos)
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE:
        pos += 1
    return data[start:pos], pos


def _int_token(data, pos, what):
    token, pos = _next_token(data, pos)
    if not token.isdigit():
        raise PgmFormatError(
            f"expected an unsigned integer for {what}, got {token!r}",
            offset=pos - len(token),
        )
    return int(token), pos


def read_pgm(path) -> PixelBuffer:
    """Parse a binary PGM file into a row-major buffer.

    Raises PgmFormatError (with a byte offset) for a wrong magic number, a
    maxval other than 255, a malformed header, or a truncated payload.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    magic, pos = _next_token(data, 0)
    if magic != b"P5":
        raise PgmFormatError(
            f"not a binary PGM file (magic {magic!r}, want b'P5')", offset=0
        )
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PgmFormatError(f"invalid dimensions {width}x{height}", offset=pos)
    if maxval != 255:
        raise PgmFormatError(
            f"only 8-bit images are supported (maxval 255), got {maxval}",
            offset=pos,
        )
    # Exactly one whitespace byte separates the header from the payload.
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise PgmFormatError("missing whitespace after maxval", offset=pos)
    pos += 1
    n = width * height
    payload = data[pos : pos + n]
    if len(payload) < n:
        raise PgmFormatError(
            f"payload truncated: expected {n} pixel bytes, found {len(payload)}",
            offset=pos + len(payload),
        )
    if len(data) > pos + n:
        raise PgmFormatError(
            f"{len(data) - pos - n} trailing bytes after pixel data",
            offset=pos + n,
        )
    pixels = np.frombuffer(payload, dtype=np.uint8).copy()
    return PixelBuffer(pixels, width, height)


def write_pgm(buf: PixelBuffer, path) -> None:
    """Write the canonical P5 form: `P5\\n<w> <h>\\n255\\n` plus raw bytes."""
    header = f"P5\n{buf.width} {buf.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(buf.pixels.tobytes())
