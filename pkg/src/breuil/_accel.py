"""Optional numba acceleration.

Set ``BREUIL_DISABLE_NUMBA=1`` to force the pure-numpy kernels.
"""
from __future__ import annotations

import os

_FLAG = "BREUIL_DISABLE_NUMBA"

try:
    if os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on"):
        raise ImportError(f"numba disabled by {_FLAG}")
    from numba import njit

    NUMBA_OK = True
except ImportError:
    NUMBA_OK = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def deco(f):
            return f

        return deco


__all__ = ["njit", "NUMBA_OK"]
