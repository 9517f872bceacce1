from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

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
from diophant.numtheory import four_squares
from diophant.polynomial import Polynomial
from diophant.rings import quad


@st.composite
def kernel_inputs(draw):
    d = draw(st.sampled_from([0, -1, 2, 3]))
    n_vars = draw(st.integers(1, 3))
    n_terms = draw(st.integers(1, 5))
    exps = np.array([[draw(st.integers(0, 3)) for _ in range(n_vars)] for _ in range(n_terms)], dtype=np.int64)
    ca = np.array([draw(st.integers(-20, 20)) for _ in range(n_terms)], dtype=np.float64)
    cb = np.array([0 if d == 0 else draw(st.integers(-20, 20)) for _ in range(n_terms)], dtype=np.float64)
    n_pts = 40
    pa = np.array([[draw(st.integers(-4, 4)) for _ in range(n_vars)] for _ in range(n_pts)], dtype=np.float64)
    pb = np.zeros_like(pa) if d == 0 else np.array(
        [[draw(st.integers(-4, 4)) for _ in range(n_vars)] for _ in range(n_pts)], dtype=np.float64)
    return d, exps, ca, cb, pa, pb


def exact_roots(d, exps, ca, cb, pa, pb):
    out = []
    for p in range(pa.shape[0]):
        va = vb = 0
        for t in range(exps.shape[0]):
            ma, mb = int(ca[t]), int(cb[t])
            for v in range(exps.shape[1]):
                xa, xb = int(pa[p, v]), int(pb[p, v])
                for _ in range(int(exps[t, v])):
                    ma, mb = ma * xa + d * mb * xb, ma * xb + mb * xa
            va += ma
            vb += mb
        out.append(va == 0 and vb == 0)
    return np.array(out)


@settings(max_examples=200)
@given(kernel_inputs())
def test_candidate_mask_backends_agree_and_never_miss_roots(args):
    d, exps, ca, cb, pa, pb = args
    tol = tolerance(len(ca), int(exps.sum(axis=1).max()))
    m_np = candidate_mask_numpy(exps, ca, cb, float(d), pa, pb, tol)
    m_nb = candidate_mask_numba(exps, ca, cb, float(d), pa, pb, tol)
    truth = exact_roots(d, exps, ca, cb, pa, pb)
    assert np.array_equal(m_np, m_nb)
    assert not np.any(truth & ~m_np)


def test_candidate_mask_big_values_stay_sound():
    # x^2 - 2 y^2 - 1 at huge Pell solutions: float cancellation must not drop the roots
    Q = quad(2)
    p = Polynomial.var(Q, 0, 2) ** 2 - 2 * Polynomial.var(Q, 1, 2) ** 2 - 1
    sols = [(3, 2), (17, 12), (577, 408), (665857, 470832), (886731088897, 627013566048)]
    pa = np.array(sols, dtype=np.float64)
    pb = np.zeros_like(pa)
    exps = np.array([e for e, _ in p.pair_terms()], dtype=np.int64)
    ca = np.array([c[0] for _, c in p.pair_terms()], dtype=np.float64)
    cb = np.array([c[1] for _, c in p.pair_terms()], dtype=np.float64)
    tol = tolerance(len(ca), 2)
    assert candidate_mask_numpy(exps, ca, cb, 2.0, pa, pb, tol).all()
    assert candidate_mask_numba(exps, ca, cb, 2.0, pa, pb, tol).all()


def test_liar_backends_agree():
    for f, s, n in [(1, 1, 1), (2, 1, 2), (2, 2, 3), (3, 2, 3)]:
        nm = injective_maps(f, n)
        assert liar_counts_numba(f, s, n, nm) == liar_counts_numpy(f, s, n, nm)


def test_diag_backends_agree():
    for t, y in [(1, 2), (2, 2), (2, 3), (3, 3)]:
        al = fixed_point_free_maps(y)
        a = diag_counts_numba(t, y, al)
        assert (int(a[0]), int(a[1])) == diag_counts_numpy(t, y, al)
        assert a[1] == 0


def test_enumeration_helpers():
    assert injective_maps(2, 3).shape == (6, 2)
    assert all(all(row[i] != i for i in range(3)) for row in fixed_point_free_maps(3))
    assert len(fixed_point_free_maps(3)) == 8  # 2^3 maps avoid their own index


def test_four_square_tables():
    N = 3000
    a = four_square_table_numba(N)
    b = four_square_table_numpy(N)
    assert np.array_equal(a, b)
    for n in range(N + 1):
        assert tuple(int(v) for v in a[n]) == four_squares(n)


def test_env_flag_selects_backend():
    code = "from diophant.kernels import backend_name; print(backend_name())"
    env = dict(os.environ, DIOPHANT_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["DIOPHANT_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("numba" if HAVE_NUMBA else "numpy")


def test_search_results_do_not_depend_on_backend():
    code = (
        "from diophant.search import enumerate_members\n"
        "from diophant.syntax import compile_formula\n"
        "S = compile_formula('exists x1 (exists x2 (x0 = x1^2 + 2*x2^2))')\n"
        "print([p[0].a for p, w in enumerate_members(S, 6, 30)])\n"
    )
    outs = set()
    for flag in ("0", "1"):
        env = dict(os.environ, DIOPHANT_NUMBA=flag)
        outs.add(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)
    assert len(outs) == 1
