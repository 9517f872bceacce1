"""Backend switch for the numeric kernels.

Every kernel has a numba ``@njit`` loop and a vectorised numpy twin.  The
numba path is used when numba imports and ``DIOPHANT_NUMBA`` is not set to
``0``; set ``DIOPHANT_NUMBA=0`` to force the numpy path.
"""

from __future__ import annotations

import os

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("DIOPHANT_NUMBA", "1").lower() not in ("0", "false", "no", "off")


def njit(fn):
    """Compile with numba when available; otherwise return ``fn`` untouched."""
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
