"""Selects between numba-compiled kernels and the plain numpy path.

Set ``WEGNER7_ACCEL=numpy`` to run every kernel as ordinary Python over numpy
arrays. The default is ``numba`` when it can be imported.
"""

from __future__ import annotations

import os
from typing import Any, Callable

ACCEL = os.environ.get("WEGNER7_ACCEL", "numba").strip().lower()

try:
    if ACCEL == "numpy":
        raise ImportError("numba disabled by WEGNER7_ACCEL")
    from numba import njit as _njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False
    _njit = None


def kernel(fn: Callable[..., Any]) -> Callable[..., Any]:
    """Compile ``fn`` with ``@njit(cache=True)`` when numba is active.

    The undecorated function stays reachable as ``.py_func`` on both paths so
    tests and the benchmark can run the two side by side.
    """
    if HAS_NUMBA:
        compiled = _njit(cache=True)(fn)
        return compiled
    fn.py_func = fn  # type: ignore[attr-defined]
    return fn
