"""Byte-level primitives: the expanded XOR and modulo-256 arithmetic.

The expanded XOR (exor) combines an 8-bit value with a 9-bit key: bit i of
the result is NOT(x_i ^ r_i ^ r_{i+1}) for i = 0..7, bits numbered from the
least significant.  Because the same key bits are folded in twice, applying
exor twice with the same key returns the original value, which is what makes
the diffusion passes invertible.  Note exor is not plain XOR: the extra
r_{i+1} term couples adjacent bit positions of the key.
"""


def _check_byte(v, name):
    if not 0 <= v <= 255:
        raise ValueError(f"{name} must lie in [0, 255], got {v}")


def _check_key(r):
    if not 0 <= r <= 511:
        raise ValueError(f"key must lie in [0, 511], got {r}")


def exor(x: int, r: int) -> int:
    """Expanded XOR of byte x with 9-bit key r.

    Closed form of the per-bit definition: the low 8 key bits give r_i, the
    key shifted right once gives r_{i+1}, and the final NOT is a masked
    complement.
    """
    _check_byte(x, "x")
    _check_key(r)
    return ~(x ^ (r & 0xFF) ^ ((r >> 1) & 0xFF)) & 0xFF


def exor_inverse_check(x: int, r: int) -> int:
    """exor applied twice with the same key; equals x for every pair."""
    return exor(exor(x, r), r)


def add_mod256(a: int, b: int) -> int:
    """(a + b) mod 256."""
    _check_byte(a, "a")
    _check_byte(b, "b")
    return (a + b) % 256


def sub_mod256(a: int, b: int) -> int:
    """(a - b) mod 256, wrapping into [0, 255]."""
    _check_byte(a, "a")
    _check_byte(b, "b")
    return (a - b) % 256
