"""Kernel backend selection.

The compiled Cython kernels are preferred; the pure-Python twin is used when
the extension is missing or when GSP4KIT_BACKEND=python is set.  Both expose
the same four functions (close_group, orders_histogram, invariant_subspace,
imprimitivity) with identical semantics and enumeration order.
"""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("GSP4KIT_BACKEND", "auto")

if _choice not in ("auto", "python", "cython"):
    raise ValueError(f"GSP4KIT_BACKEND must be auto|python|cython, got {_choice}")

if _choice == "python":
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        if _choice == "cython":
            raise
        kernels = _kernels_py

BACKEND = kernels.BACKEND


def get_kernels(name=None):
    """Explicit backend lookup, used by the benchmark."""
    if name in (None, "auto"):
        return kernels
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name}")
