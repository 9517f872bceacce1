"""Floating-point prefilter for box scans of polynomial roots.

A point is a *candidate* when the float value of the polynomial is within
``tol * (sum of |term|)`` of zero, componentwise in the (rational, irrational)
representation.  Rounding error never exceeds that bound at our sizes, so a
point that is not a candidate is certainly not a root; candidates are then
confirmed with exact integer arithmetic by the caller.
"""

from __future__ import annotations

import numpy as np

from ._backend import USE_NUMBA, njit

__all__ = ["candidate_mask", "candidate_mask_numba", "candidate_mask_numpy", "tolerance"]


def tolerance(n_terms: int, degree: int) -> float:
    # generous multiple of the unit roundoff times the operation count
    return 64.0 * (n_terms + 2 * degree + 8) * 2.0**-52


@njit
def candidate_mask_numba(exps, ca, cb, d, pa, pb, tol):
    n_points, n_vars = pa.shape
    n_terms = exps.shape[0]
    ad = abs(d)
    out = np.zeros(n_points, dtype=np.bool_)
    for p in range(n_points):
        va = 0.0
        vb = 0.0
        sa = 0.0
        sb = 0.0
        for t in range(n_terms):
            ma = ca[t]
            mb = cb[t]
            aa = abs(ma)
            ab = abs(mb)
            for v in range(n_vars):
                e = exps[t, v]
                xa = pa[p, v]
                xb = pb[p, v]
                for _ in range(e):
                    na = ma * xa + d * mb * xb
                    nb = ma * xb + mb * xa
                    ma = na
                    mb = nb
                    naa = aa * abs(xa) + ad * ab * abs(xb)
                    nab = aa * abs(xb) + ab * abs(xa)
                    aa = naa
                    ab = nab
            va += ma
            vb += mb
            sa += aa
            sb += ab
        ok_a = abs(va) <= tol * sa
        ok_b = abs(vb) <= tol * sb
        finite = np.isfinite(va) and np.isfinite(vb) and np.isfinite(sa) and np.isfinite(sb)
        out[p] = (ok_a and ok_b) or not finite
    return out


def candidate_mask_numpy(exps, ca, cb, d, pa, pb, tol):
    n_points, n_vars = pa.shape
    ad = abs(d)
    va = np.zeros(n_points)
    vb = np.zeros(n_points)
    sa = np.zeros(n_points)
    sb = np.zeros(n_points)
    abs_pa = np.abs(pa)
    abs_pb = np.abs(pb)
    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(exps.shape[0]):
            ma = np.full(n_points, ca[t])
            mb = np.full(n_points, cb[t])
            aa = np.abs(ma)
            ab = np.abs(mb)
            for v in range(n_vars):
                xa = pa[:, v]
                xb = pb[:, v]
                axa = abs_pa[:, v]
                axb = abs_pb[:, v]
                for _ in range(int(exps[t, v])):
                    ma, mb = ma * xa + d * mb * xb, ma * xb + mb * xa
                    aa, ab = aa * axa + ad * ab * axb, aa * axb + ab * axa
            va += ma
            vb += mb
            sa += aa
            sb += ab
        ok = (np.abs(va) <= tol * sa) & (np.abs(vb) <= tol * sb)
        finite = np.isfinite(va) & np.isfinite(vb) & np.isfinite(sa) & np.isfinite(sb)
    return ok | ~finite


def candidate_mask(exps, ca, cb, d, pa, pb, tol):
    """Boolean mask of points that may be exact roots."""
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    ca = np.ascontiguousarray(ca, dtype=np.float64)
    cb = np.ascontiguousarray(cb, dtype=np.float64)
    pa = np.ascontiguousarray(pa, dtype=np.float64)
    pb = np.ascontiguousarray(pb, dtype=np.float64)
    if USE_NUMBA:
        return candidate_mask_numba(exps, ca, cb, float(d), pa, pb, float(tol))
    return candidate_mask_numpy(exps, ca, cb, float(d), pa, pb, float(tol))
