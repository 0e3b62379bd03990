"""Optional numba acceleration.

Kernels in :mod:`eikit._kernels` are written in the numba-compatible subset of
Python and decorated with :func:`jit`.  Set ``EIKIT_DISABLE_NUMBA=1`` to run them
as ordinary Python/numpy code; the flag is read once, at import time.
"""

import os

_disabled = os.environ.get("EIKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    import numba
    NUMBA_ENABLED = True
except ImportError:
    numba = None
    NUMBA_ENABLED = False


def jit(func):
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "python"
