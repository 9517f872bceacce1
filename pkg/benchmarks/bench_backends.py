"""Time every numeric kernel under its numba and numpy implementations.

    python benchmarks/bench_backends.py [--repeat 5]

The numba column excludes compilation (one warm-up call first).  Both
implementations are called directly, so ``DIOPHANT_NUMBA`` does not matter.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from diophant.kernels import HAVE_NUMBA
from diophant.kernels.boxscan import candidate_mask_numba, candidate_mask_numpy, tolerance
from diophant.kernels.finite import (
    diag_counts_numba,
    diag_counts_numpy,
    fixed_point_free_maps,
    injective_maps,
    liar_counts_numba,
    liar_counts_numpy,
)
from diophant.kernels.squares import four_square_table_numba, four_square_table_numpy
from diophant.reduction import build_sigma


def _boxscan_case():
    # the third Sigma equation over Z[sqrt 2], on a radius-2 box
    p = build_sigma(2)[2]
    used = sorted(p.variables())
    terms = p.pair_terms()
    exps = np.array([[e[i] for i in used] for e, _ in terms], dtype=np.int64)
    ca = np.array([c[0] for _, c in terms], dtype=np.float64)
    cb = np.array([c[1] for _, c in terms], dtype=np.float64)
    vals = np.array([(a, b) for a in range(-2, 3) for b in range(-2, 3)], dtype=np.float64)
    idx = np.stack(np.unravel_index(np.arange(len(vals) ** len(used)), (len(vals),) * len(used)), axis=1)
    pa, pb = vals[idx, 0], vals[idx, 1]
    return (exps, ca, cb, 2.0, pa, pb, tolerance(len(ca), p.degree)), f"{len(pa)} points"


def cases():
    box_args, box_label = _boxscan_case()
    nm = injective_maps(3, 3)
    al = fixed_point_free_maps(3)
    return [
        ("candidate_mask", box_label, candidate_mask_numba, candidate_mask_numpy, box_args),
        ("liar_counts", "|F|=|S|=|N|=3", liar_counts_numba, liar_counts_numpy, (3, 3, 3, nm)),
        ("diag_counts", "|T|=|Y|=3", diag_counts_numba, diag_counts_numpy, (3, 3, al)),
        ("four_square_table", "N=10^4", four_square_table_numba, four_square_table_numpy, (10**4,)),
    ]


def best_of(fn, args, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; the numba column runs as plain Python")
    print(f"{'kernel':<18} {'input':<18} {'numba [s]':>10} {'numpy [s]':>10} {'ratio':>7}")
    for name, label, f_nb, f_np, fargs in cases():
        a, b = f_nb(*fargs), f_np(*fargs)  # warm-up and agreement
        same = np.array_equal(np.asarray(a), np.asarray(b))
        t_nb = best_of(f_nb, fargs, args.repeat)
        t_np = best_of(f_np, fargs, args.repeat)
        flag = "" if same else "  MISMATCH"
        print(f"{name:<18} {label:<18} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>6.1f}x{flag}")


if __name__ == "__main__":
    main()
