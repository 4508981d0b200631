"""Chaotic sources: the Chen flow, the logistic map, and byte quantization.

The Chen system

    dx/dt = a (y - x)
    dy/dt = (c - a) x - x z + c y
    dz/dt = x y - b z

is integrated with fixed-step classical Runge-Kutta at h = 0.001 using the
parameters a = 35, b = 3, c = 28, for which the flow is chaotic.  Trajectory
coordinates are quantized into the 8-bit keystream that drives diffusion.
All arithmetic is IEEE-754 double precision with a pinned evaluation order
(see ``_kernels``), so the same key always reproduces the same bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import backend
from ._kernels import CHEN_A, CHEN_B, CHEN_C
from .errors import IntegrationDivergenceError

if TYPE_CHECKING:
    from .cipher import SecretKey

STEP_SIZE = 0.001
BURN_IN_STEPS = 1000

# Open interval of logistic-map parameters in the chaotic regime.
MU_LOW = 3.5699456
MU_HIGH = 4.0


@dataclass(frozen=True)
class ChenState:
    """Phase-space point (x, y, z) of the Chen flow."""

    x: float
    y: float
    z: float

    def is_finite(self):
        return math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)


@dataclass(frozen=True)
class LogisticParams:
    """Control parameter of the logistic map y <- mu*y*(1-y).

    mu must lie strictly inside (3.5699456, 4), the chaotic window used by
    the cipher.
    """

    mu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and MU_LOW < self.mu < MU_HIGH):
            raise ValueError(
                f"mu must lie strictly in ({MU_LOW}, {MU_HIGH}), got {self.mu!r}"
            )


@dataclass(frozen=True, eq=False)
class Keystream:
    """Byte sequence of length n + 4 generated for an n-pixel image.

    values[0..n-1] feed the per-pixel key derivation; values[n..n+3] supply
    the four boundary constants of the two diffusion passes.
    """

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if not isinstance(v, np.ndarray) or v.dtype != np.int64 or v.ndim != 1:
            raise ValueError("keystream values must be a 1-D int64 array")
        if v.shape[0] < 5:
            raise ValueError("keystream must hold at least n + 4 = 5 bytes")

    @property
    def n(self):
        """Image size this keystream was generated for."""
        return self.values.shape[0] - 4

    def __len__(self):
        return self.values.shape[0]


def rk4_step(state: ChenState, h: float = STEP_SIZE) -> ChenState:
    """Advance the Chen flow by one Runge-Kutta step of size h.

    Raises IntegrationDivergenceError if the step produces a non-finite
    coordinate, which signals an unusable key region.
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    x, y, z = backend.active().rk4_step(state.x, state.y, state.z, h)
    out = ChenState(float(x), float(y), float(z))
    if not out.is_finite():
        raise IntegrationDivergenceError(
            f"trajectory diverged from ({state.x}, {state.y}, {state.z})"
        )
    return out


def logistic_step(y: float, params: LogisticParams) -> float:
    """One logistic-map iterate mu*y*(1-y); y must lie in [0, 1]."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"logistic input must lie in [0, 1], got {y!r}")
    return params.mu * y * (1.0 - y)


def quantize_byte(v: float) -> int:
    """floor(frac(|v|) * 1e8) mod 256, the trajectory-to-keystream map."""
    return math.floor((abs(v) % 1.0) * 1e8) % 256


def generate_keystream(key: "SecretKey", n: int) -> Keystream:
    """Derive the n+4 keystream bytes for an n-pixel image from the key.

    The flow starts at (key.x, key.y, key.z) and runs 1000 burn-in steps
    plus ceil((n+4)/3) emitting steps; each emitting step contributes its
    x, y, z coordinates in that order, and the sequence is truncated to
    exactly n + 4 values before quantization.

    Raises IntegrationDivergenceError when the trajectory blows up.
    """
    if n < 1:
        raise ValueError(f"image size must be at least 1, got {n}")
    out = np.empty(n + 4, dtype=np.int64)
    status = backend.active().chen_keystream(
        key.x, key.y, key.z, STEP_SIZE, BURN_IN_STEPS, out
    )
    if status != 0:
        raise IntegrationDivergenceError(
            f"trajectory diverged for key ({key.x}, {key.y}, {key.z})"
        )
    return Keystream(out)


__all__ = [
    "CHEN_A",
    "CHEN_B",
    "CHEN_C",
    "STEP_SIZE",
    "BURN_IN_STEPS",
    "MU_LOW",
    "MU_HIGH",
    "ChenState",
    "LogisticParams",
    "Keystream",
    "rk4_step",
    "logistic_step",
    "quantize_byte",
    "generate_keystream",
]
