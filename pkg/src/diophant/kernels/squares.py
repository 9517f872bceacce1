"""Bulk four-square decompositions for ``0..N``.

Each row is the lexicographically greatest ``k1 >= k2 >= k3 >= k4 >= 0``
with ``k1^2 + k2^2 + k3^2 + k4^2 = n``, matching ``numtheory.four_squares``.
The numba path runs the descending search per n; the numpy path enumerates
every descending quadruple once and keeps the greatest per sum.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from ._backend import USE_NUMBA, njit

__all__ = ["four_square_table", "four_square_table_numba", "four_square_table_numpy"]


@njit
def _isqrt(x):
    r = int(np.sqrt(x))
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


@njit
def four_square_table_numba(N):
    out = np.zeros((N + 1, 4), dtype=np.int64)
    for n in range(N + 1):
        done = False
        for k1 in range(_isqrt(n), -1, -1):
            r1 = n - k1 * k1
            if r1 > 3 * k1 * k1:
                break
            for k2 in range(min(k1, _isqrt(r1)), -1, -1):
                r2 = r1 - k2 * k2
                if r2 > 2 * k2 * k2:
                    break
                for k3 in range(min(k2, _isqrt(r2)), -1, -1):
                    r3 = r2 - k3 * k3
                    if r3 > k3 * k3:
                        break
                    k4 = _isqrt(r3)
                    if k4 * k4 == r3:
                        out[n, 0] = k1
                        out[n, 1] = k2
                        out[n, 2] = k3
                        out[n, 3] = k4
                        done = True
                        break
                if done:
                    break
            if done:
                break
    return out


def four_square_table_numpy(N):
    m = isqrt(N)
    ks = np.arange(m + 1, dtype=np.int64)
    a, b = np.meshgrid(ks, ks, indexing="ij")
    keep = a >= b
    a, b = a[keep], b[keep]  # descending pairs
    sq = a * a + b * b
    # quadruple = (pair_hi, pair_lo) with hi.b >= lo.a
    hi = np.flatnonzero(sq <= N)
    out = np.full((N + 1, 4), -1, dtype=np.int64)
    rows = []
    for i in hi:
        lo = np.flatnonzero((a <= b[i]) & (sq + sq[i] <= N))
        if len(lo):
            rows.append(np.column_stack([np.full(len(lo), a[i]), np.full(len(lo), b[i]), a[lo], b[lo]]))
    quads = np.concatenate(rows)
    # lexicographically greatest per sum: sort ascending, last write wins
    order = np.lexsort(quads[:, ::-1].T)
    quads = quads[order]
    sums = (quads * quads).sum(axis=1)
    out[sums] = quads
    return out


def four_square_table(N: int) -> np.ndarray:
    if N < 0:
        raise ValueError("N must be >= 0")
    if USE_NUMBA:
        return four_square_table_numba(N)
    return four_square_table_numpy(N)
