"""Kernel-set selection.

Two interchangeable kernel sets exist: "accelerated" (numba @njit) and
"reference" (pure numpy).  The default is resolved from the
QAOA_KERNELS environment variable (accelerated | reference | auto);
auto picks accelerated when numba imports cleanly.
"""

import os

from . import numpy_impl

REFERENCE = "reference"
ACCELERATED = "accelerated"

_ALIASES = {
    "numpy": REFERENCE,
    "numba": ACCELERATED,
    REFERENCE: REFERENCE,
    ACCELERATED: ACCELERATED,
}

_numba_impl = None
_numba_error = None


def _load_numba():
    global _numba_impl, _numba_error
    if _numba_impl is None and _numba_error is None:
        try:
            from . import numba_impl
            _numba_impl = numba_impl
        except ImportError as exc:  # pragma: no cover - env without numba
            _numba_error = exc
    return _numba_impl


def default_backend() -> str:
    choice = os.environ.get("QAOA_KERNELS", "auto").strip().lower()
    if choice in _ALIASES:
        return _ALIASES[choice]
    if choice != "auto":
        raise ValueError(f"unknown QAOA_KERNELS value: {choice!r}")
    return ACCELERATED if _load_numba() is not None else REFERENCE


def get(name: str | None = None):
    """Resolve a backend name to its kernel module."""
    if name is None:
        name = default_backend()
    name = _ALIASES.get(name.strip().lower())
    if name == REFERENCE:
        return numpy_impl
    if name == ACCELERATED:
        impl = _load_numba()
        if impl is None:
            raise RuntimeError(
                f"accelerated kernels unavailable (numba import failed: {_numba_error})"
            )
        return impl
    raise ValueError(f"unknown backend: {name!r}")


def backend_name(module) -> str:
    return REFERENCE if module is numpy_impl else ACCELERATED
