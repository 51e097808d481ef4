"""Optional numba acceleration.

Set ``ZXSEARCH_DISABLE_NUMBA=1`` to force the pure-numpy kernels.  The flag
is read once, at import time.
"""

from __future__ import annotations

import os

DISABLED = os.environ.get("ZXSEARCH_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_AVAILABLE = numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not DISABLED


def njit(fn):
    """``numba.njit(cache=True)`` when numba is importable, else the function itself."""
    if not NUMBA_AVAILABLE:
        return fn
    return numba.njit(cache=True)(fn)
