"""Numeric kernels with numba and numpy backends."""

from ._backend import HAVE_NUMBA, USE_NUMBA, backend_name

__all__ = ["HAVE_NUMBA", "USE_NUMBA", "backend_name"]
