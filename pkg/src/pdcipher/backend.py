"""Selection between the compiled and the pure-Python kernel paths.

The loops in ``_kernels`` are plain Python over numpy storage.  This module
loads a second instance of that module and wraps every kernel in
``numba.njit`` (default options: no fastmath, so IEEE-754 semantics are
preserved and both paths return bit-identical results).

The environment variable ``PDCIPHER_BACKEND`` picks the path:

``auto``
    compiled kernels when numba imports, pure Python otherwise (default);
``numba``
    compiled kernels, raising if numba is unavailable;
``python``
    plain Python kernels.

Tests and benchmarks can override the choice locally with :func:`use`.
"""

import importlib.util
import os
import warnings
from contextlib import contextmanager

from . import _kernels as _pure_kernels

ENV_VAR = "PDCIPHER_BACKEND"
_CHOICES = ("auto", "numba", "python")

_compiled_kernels = None
_compile_failure = None
_override = None
_warned_fallback = False


def _load_compiled():
    """Compile the kernel module with numba, once per process."""
    global _compiled_kernels, _compile_failure
    if _compiled_kernels is not None or _compile_failure is not None:
        return
    try:
        import numba
    except ImportError as exc:
        _compile_failure = exc
        return
    spec = importlib.util.find_spec("pdcipher._kernels")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    # Rebind each kernel to its jitted form inside the fresh module instance;
    # cross-kernel calls resolve through the module globals at compile time,
    # so they must all be swapped before any of them runs.
    for name in mod.KERNEL_NAMES:
        setattr(mod, name, numba.njit(cache=True)(getattr(mod, name)))
    _compiled_kernels = mod


def selected():
    """Name of the backend that active() would return, after fallbacks."""
    global _warned_fallback
    choice = _override or os.environ.get(ENV_VAR, "auto").lower()
    if choice not in _CHOICES:
        raise ValueError(
            f"{ENV_VAR} must be one of {_CHOICES}, got {choice!r}"
        )
    if choice == "python":
        return "python"
    _load_compiled()
    if _compiled_kernels is not None:
        return "numba"
    if choice == "numba":
        raise RuntimeError(
            "numba backend requested but numba is not importable"
        ) from _compile_failure
    if not _warned_fallback:
        warnings.warn(
            "numba unavailable, falling back to the pure-Python kernels",
            RuntimeWarning,
            stacklevel=2,
        )
        _warned_fallback = True
    return "python"


def active():
    """The kernel module (compiled or pure) for the current selection."""
    if selected() == "numba":
        return _compiled_kernels
    return _pure_kernels


@contextmanager
def use(name):
    """Force a backend within a with-block, e.g. ``with backend.use("python")``."""
    global _override
    if name not in _CHOICES:
        raise ValueError(f"backend must be one of {_CHOICES}, got {name!r}")
    previous = _override
    _override = name
    try:
        yield
    finally:
        _override = previous
