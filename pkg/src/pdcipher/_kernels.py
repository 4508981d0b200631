"""Hot loops shared by both execution backends.

Every function here is a feedback chain (each step depends on the previous
one), so none of them vectorize; they are written as scalar loops over numpy
storage.  The backend module executes this file twice: once as-is for the
pure-Python path and once wrapped in ``numba.njit`` for the compiled path.
Both paths therefore run the same statements, and because the expression
evaluation order below is fixed (no reassociation, no fused multiply-add,
IEEE-754 doubles throughout) their outputs are bit-identical.

Constraints that must not be broken when editing:

* keep every construct nopython-compatible (no dicts, no closures, arrays
  allocated with explicit dtypes);
* do not reorder arithmetic inside ``rk4_step`` or the logistic updates,
  decryption only works if the keystream reproduces exactly;
* integer work stays in int64, fractional parts are taken with ``% 1.0``
  which is exact and avoids int64 overflow on divergent trajectories.
"""

import math

import numpy as np

KERNEL_NAMES = (
    "rk4_step",
    "chen_keystream",
    "build_permutation",
    "_exor",
    "_mix_keys",
    "diffuse_forward",
    "diffuse_backward",
    "undiffuse_forward",
    "undiffuse_backward",
)

# Chen system parameters, fixed in the chaotic regime.
CHEN_A = 35.0
CHEN_B = 3.0
CHEN_C = 28.0


def rk4_step(x, y, z, h):
    """One classical fourth-order Runge-Kutta step of the Chen flow.

    Slopes are evaluated k1 through k4 with half-step states formed as
    ``x + 0.5*h*k`` and the update combined left to right as
    ``x + (h/6)*(k1 + 2*k2 + 2*k3 + k4)``.
    """
    k1x = CHEN_A * (y - x)
    k1y = (CHEN_C - CHEN_A) * x - x * z + CHEN_C * y
    k1z = x * y - CHEN_B * z
    hh = 0.5 * h
    ax = x + hh * k1x
    ay = y + hh * k1y
    az = z + hh * k1z
    k2x = CHEN_A * (ay - ax)
    k2y = (CHEN_C - CHEN_A) * ax - ax * az + CHEN_C * ay
    k2z = ax * ay - CHEN_B * az
    bx = x + hh * k2x
    by = y + hh * k2y
    bz = z + hh * k2z
    k3x = CHEN_A * (by - bx)
    k3y = (CHEN_C - CHEN_A) * bx - bx * bz + CHEN_C * by
    k3z = bx * by - CHEN_B * bz
    cx = x + h * k3x
    cy = y + h * k3y
    cz = z + h * k3z
    k4x = CHEN_A * (cy - cx)
    k4y = (CHEN_C - CHEN_A) * cx - cx * cz + CHEN_C * cy
    k4z = cx * cy - CHEN_B * cz
    s = h / 6.0
    return (
        x + s * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        y + s * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        z + s * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
    )


def chen_keystream(x, y, z, h, burn_in, out):
    """Fill ``out`` with bytes quantized from the Chen trajectory.

    The first ``burn_in`` integration steps are discarded; each following
    step emits its x, y, z coordinates in that order until ``out`` is full.
    Each coordinate v becomes ``floor(frac(|v|) * 1e8) mod 256``.

    Returns 0 on success, 1 if the trajectory left the finite range.
    """
    for _ in range(burn_in):
        x, y, z = rk4_step(x, y, z, h)
    total = out.shape[0]
    filled = 0
    while filled < total:
        x, y, z = rk4_step(x, y, z, h)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            return 1
        out[filled] = math.floor((abs(x) % 1.0) * 1e8) % 256
        filled += 1
        if filled < total:
            out[filled] = math.floor((abs(y) % 1.0) * 1e8) % 256
            filled += 1
        if filled < total:
            out[filled] = math.floor((abs(z) % 1.0) * 1e8) % 256
            filled += 1
    return 0


def build_permutation(y0, mu, n, budget, out):
    """Coupon-collector style index sequence from a logistic trajectory.

    Iterates y <- mu*y*(1-y) from ``y0``; each iterate proposes the 1-based
    cell ceil(y*n), clamped into [1, n], which is accepted while unused.
    Stops when all n cells are placed or ``budget`` iterations were spent;
    leftover cells are then appended in ascending order so the result is
    always a bijection.  Returns the number of logistic iterations used.
    """
    flags = np.zeros(n, dtype=np.uint8)
    y = y0
    filled = 0
    iters = 0
    while filled < n and iters < budget:
        y = mu * y * (1.0 - y)
        iters += 1
        c = math.ceil(y * n)
        if c < 1:
            c = 1
        elif c > n:
            c = n
        if flags[c - 1] == 0:
            flags[c - 1] = 1
            out[filled] = c
            filled += 1
    if filled < n:
        for k in range(n):
            if flags[k] == 0:
                out[filled] = k + 1
                filled += 1
    return iters


def _exor(v, r):
    # bit i of the result is NOT(v_i ^ r_i ^ r_{i+1}); closed form over all 8 bits
    return ~(v ^ (r & 255) ^ ((r >> 1) & 255)) & 255


def _mix_keys(xk, fb, mu):
    """Per-pixel 9-bit key pair from a keystream byte and a feedback byte.

    The two bytes are folded into (0, 1), iterated twice through the
    logistic map, and each iterate is quantized with floor(v*1e8) mod 512.
    """
    if xk <= fb:
        r0 = (xk + 127.0) / (fb + 255.0)
    else:
        r0 = (fb + 127.0) / (xk + 255.0)
    rh = mu * r0 * (1.0 - r0)
    rh2 = mu * rh * (1.0 - rh)
    return math.floor(rh * 1e8) % 512, math.floor(rh2 * 1e8) % 512


def diffuse_forward(p, ks, mu, out):
    """Forward feedback pass: out_i mixes p_i, out_{i-1} and keys seeded by p_{i-1}."""
    n = p.shape[0]
    prev_p = ks[n]
    prev_m = ks[n + 1]
    for i in range(n):
        r, rp = _mix_keys(ks[i], prev_p, mu)
        m = (_exor(p[i], r) + _exor(prev_m, rp)) % 256
        out[i] = m
        prev_p = p[i]
        prev_m = m


def diffuse_backward(m, ks, mu, out):
    """Reverse feedback pass, mirroring diffuse_forward from the last pixel."""
    n = m.shape[0]
    next_m = ks[n + 3]
    next_c = ks[n + 2]
    for i in range(n - 1, -1, -1):
        r, rp = _mix_keys(ks[n - i - 1], next_m, mu)
        c = (_exor(m[i], r) + _exor(next_c, rp)) % 256
        out[i] = c
        next_m = m[i]
        next_c = c


def undiffuse_forward(m, ks, mu, out):
    """Exact inverse of diffuse_forward; recovers p_i left to right."""
    n = m.shape[0]
    prev_p = ks[n]
    prev_m = ks[n + 1]
    for i in range(n):
        r, rp = _mix_keys(ks[i], prev_p, mu)
        p = _exor((m[i] - _exor(prev_m, rp)) % 256, r)
        out[i] = p
        prev_p = p
        prev_m = m[i]


def undiffuse_backward(c, ks, mu, out):
    """Exact inverse of diffuse_backward; recovers m_i right to left."""
    n = c.shape[0]
    next_m = ks[n + 3]
    next_c = ks[n + 2]
    for i in range(n - 1, -1, -1):
        r, rp = _mix_keys(ks[n - i - 1], next_m, mu)
        m = _exor((c[i] - _exor(next_c, rp)) % 256, r)
        out[i] = m
        next_m = m
        next_c = c[i]
