"""Exhaustive small-model checks for the Liar theorem and the diagonal schema.

Tables are enumerated by their index in mixed radix, so the numba loops and
the numpy twins visit the same cases and return the same counts.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

from ._backend import USE_NUMBA, njit

__all__ = [
    "liar_counts",
    "liar_counts_numba",
    "liar_counts_numpy",
    "diag_counts",
    "diag_counts_numba",
    "diag_counts_numpy",
    "injective_maps",
    "fixed_point_free_maps",
]


def injective_maps(f: int, n: int) -> np.ndarray:
    """All injective maps ``range(f) -> range(n)`` as rows."""
    rows = list(permutations(range(n), f))
    return np.array(rows, dtype=np.int64).reshape(len(rows), f)


def fixed_point_free_maps(y: int) -> np.ndarray:
    rows = []
    for idx in range(y**y):
        m, ok = [], True
        for v in range(y):
            img = (idx // y**v) % y
            ok &= img != v
            m.append(img)
        if ok:
            rows.append(m)
    return np.array(rows, dtype=np.int64).reshape(len(rows), y)


# -- Liar ---------------------------------------------------------------------
# Formulas are 0..f-1, sentences the first s of them, names 0..n-1.  A case is
# (naming, subst table, T) and counts as a counterexample when some formula
# T-represents the anti-diagonal set of named n with subst(g^-1(n), n) not in T.


@njit
def liar_counts_numba(f, s, n, namings):
    cells = f * n
    n_tables = s**cells
    cases = 0
    bad = 0
    table = np.zeros(cells, dtype=np.int64)
    inv = np.empty(n, dtype=np.int64)
    anti = np.zeros(n, dtype=np.bool_)
    for k in range(namings.shape[0]):
        for j in range(n):
            inv[j] = -1
        for phi in range(f):
            inv[namings[k, phi]] = phi
        for idx in range(n_tables):
            rem = idx
            for c in range(cells):
                table[c] = rem % s
                rem //= s
            for tmask in range(1 << s):
                cases += 1
                for j in range(n):
                    phi = inv[j]
                    if phi < 0:
                        anti[j] = False
                    else:
                        anti[j] = ((tmask >> table[phi * n + j]) & 1) == 0
                for phi in range(f):
                    rep = True
                    for j in range(n):
                        in_t = ((tmask >> table[phi * n + j]) & 1) == 1
                        if in_t != anti[j]:
                            rep = False
                            break
                    if rep:
                        bad += 1
                        break
    return cases, bad


def liar_counts_numpy(f, s, n, namings):
    cells = f * n
    idx = np.arange(s**cells, dtype=np.int64)
    table = np.stack([(idx // s**c) % s for c in range(cells)], axis=1).reshape(-1, f, n)
    cases = 0
    bad = 0
    for nm in namings:
        inv = np.full(n, -1)
        inv[nm] = np.arange(f)
        named = inv >= 0
        for tmask in range(1 << s):
            members = np.array([(tmask >> v) & 1 for v in range(s)], dtype=bool)
            in_t = members[table]  # (tables, f, n)
            anti = np.zeros((len(idx), n), dtype=bool)
            cols = np.flatnonzero(named)
            anti[:, cols] = ~in_t[:, inv[cols], cols]
            rep = np.all(in_t == anti[:, None, :], axis=2).any(axis=1)
            cases += len(idx)
            bad += int(rep.sum())
    return cases, bad


def liar_counts(f: int, s: int, n: int) -> tuple[int, int]:
    """``(cases, counterexamples)`` over every naming, subst table and T."""
    namings = injective_maps(f, n)
    if USE_NUMBA:
        c, b = liar_counts_numba(f, s, n, namings)
        return int(c), int(b)
    return liar_counts_numpy(f, s, n, namings)


# -- diagonal schema ---------------------------------------------------------
# A case is (g, alpha) with alpha fixed-point free; it is a counterexample when
# f = alpha . g . diag agrees with some column g(-, t).


@njit
def diag_counts_numba(t, y, alphas):
    cells = t * t
    n_tables = y**cells
    g = np.zeros(cells, dtype=np.int64)
    fv = np.zeros(t, dtype=np.int64)
    cases = 0
    bad = 0
    for idx in range(n_tables):
        rem = idx
        for c in range(cells):
            g[c] = rem % y
            rem //= y
        for a in range(alphas.shape[0]):
            cases += 1
            for s in range(t):
                fv[s] = alphas[a, g[s * t + s]]
            for col in range(t):
                same = True
                for s in range(t):
                    if fv[s] != g[s * t + col]:
                        same = False
                        break
                if same:
                    bad += 1
                    break
    return cases, bad


def diag_counts_numpy(t, y, alphas):
    cells = t * t
    idx = np.arange(y**cells, dtype=np.int64)
    g = np.stack([(idx // y**c) % y for c in range(cells)], axis=1).reshape(-1, t, t)
    diag = g[:, np.arange(t), np.arange(t)]
    cases = 0
    bad = 0
    for alpha in alphas:
        fv = alpha[diag]  # (tables, t)
        same = np.all(fv[:, :, None] == g, axis=1).any(axis=1)
        cases += len(idx)
        bad += int(same.sum())
    return cases, bad


def diag_counts(t: int, y: int) -> tuple[int, int]:
    """``(cases, counterexamples)`` over all ``g: T x T -> Y`` and fixed-point-free alpha."""
    alphas = fixed_point_free_maps(y)
    if len(alphas) == 0:
        return 0, 0
    if USE_NUMBA:
        c, b = diag_counts_numba(t, y, alphas)
        return int(c), int(b)
    return diag_counts_numpy(t, y, alphas)
