"""The thirteen acceptance criteria, each timed against its limit.

Run with ``pytest tests/test_acceptance.py -s`` (or as a script) to see one
PASS/FAIL line per criterion.
"""

from __future__ import annotations

import itertools
import sys
import time
from math import isqrt

import pytest

from diophant.dioset import conjoin
from diophant.enumeration import diagonal_report, left, nth_polynomial, pair, recursion_indices, right, universal_set
from diophant.formal import HOLE, diagonal_exhaustive, evaluate_term, liar_exhaustive, quine_sentence, quote
from diophant.numtheory import check_lemma5, find_odd_index, four_squares, pell_sequence
from diophant.polynomial import Polynomial
from diophant.reduction import (
    GAUSS_VARS,
    alpha_equation_solutions,
    alpha_families,
    gauss_verify,
    gauss_witness,
    sigma_box_scan,
    sigma_witness,
)
from diophant.rings import GAUSS, ZZ, quad
from diophant.search import membership, parameter_points

pytestmark = pytest.mark.acceptance


def _emit(line: str, capsys=None):
    if capsys is None:
        print(line)
        return
    with capsys.disabled():
        print("\n" + line, end="")


def run_criterion(number: int, title: str, limit: float, check, capsys=None):
    start = time.perf_counter()
    detail = ""
    try:
        detail = check() or ""
        ok = True
    except AssertionError as exc:
        ok, detail = False, f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    verdict = "PASS" if ok and in_time else "FAIL"
    note = detail if in_time else f"too slow ({detail})"
    _emit(f"{verdict} criterion {number:2d}: {title} [{elapsed:.2f}s / {limit:g}s] {note}".rstrip(), capsys)
    return ok, in_time, detail, elapsed


# -- the checks -----------------------------------------------------------------


def c1_pell():
    n = 0
    for a in (2, 3, 4, 5):
        e = a * a - 1
        for k in range(51):
            p = pell_sequence(a, k)
            assert p.x * p.x - e * p.y * p.y == 1, (a, k)
            n += 1
    return f"{n} pairs"


def c2_lemma5():
    passes = sum(bool(check_lemma5(a, n, k)) for a in (2, 3, 4) for n in range(1, 7) for k in range(1, 7))
    assert passes == 108, passes
    return "108/108"


def _brute_canonical(limit: int) -> dict[int, tuple[int, int, int, int]]:
    # greatest descending quadruple per sum, from a full enumeration
    best: dict[int, tuple[int, int, int, int]] = {}
    for quad_ in itertools.combinations_with_replacement(range(isqrt(limit), -1, -1), 4):
        s = sum(v * v for v in quad_)
        if s <= limit and (s not in best or quad_ > best[s]):
            best[s] = quad_
    return best


def c3_four_squares():
    for n in range(10**4 + 1):
        k = four_squares(n)
        assert sum(v * v for v in k) == n and list(k) == sorted(k, reverse=True) and k[3] >= 0, n
    brute = _brute_canonical(1000)
    assert all(four_squares(n) == brute[n] for n in range(1001))
    return "10001 verified, 1001 match brute force"


def c4_pairing():
    for z in range(1, 10**4 + 1):
        x, y = left(z), right(z)
        assert pair(x, y) == z and x <= z and y <= z, z
    for x in range(1, 101):
        for y in range(1, 101):
            z = pair(x, y)
            assert left(z) == x and right(z) == y, (x, y)
    return "10^4 + 100^2 cases"


def c5_closure_oracle():
    from setfixtures import constructor_fixtures

    fixtures = constructor_fixtures()
    resolved = total = 0
    for kind in ("product", "intersect", "project", "preimage", "compose"):
        assert len(fixtures[kind]) >= 3
        for name, S, truth in fixtures[kind]:
            for pt in parameter_points(S, 5):
                got = membership(S, list(pt), 10)
                total += 1
                if got.resolved:
                    resolved += 1
                    assert got.is_member == truth(tuple(e.a for e in pt)), (kind, name, pt)
                if got.is_member:
                    assert S.q.evaluate(list(pt) + list(got.witness)) == 0
    return f"{resolved}/{total} points resolved, all agree"


def c6_conjoin():
    cases = 0
    for R, values in (
        (ZZ, [(a, 0) for a in range(-5, 6)]),
        (quad(2), [(a, b) for a in range(-5, 6) for b in range(-5, 6)]),
        (GAUSS, [(a, b) for a in range(-5, 6) for b in range(-5, 6)]),
    ):
        x0, x1 = Polynomial.var(R, 0, 2), Polynomial.var(R, 1, 2)
        c = conjoin(x0, x1)
        assert R.kind == "Z" or R.conjoin_d == {"quad": 3, "gauss": 2}[R.kind]
        for u in values:
            for v in values:
                zero = c.eval_pairs([u, v]) == (0, 0)
                assert zero == (u == (0, 0) and v == (0, 0)), (R, u, v)
                cases += 1
    return f"{cases} pairs"


def c7_sigma():
    for d in (2, 3, 5):
        for k in range(6):
            w = sigma_witness(d, k)
            assert w.holds() and w.t == k * k, (d, k)
    scan = sigma_box_scan(2, 3)
    assert scan.examples
    for w in scan.examples:
        t = w.t
        assert w.holds() and t.b == 0 and t.a >= 0 and isqrt(t.a) ** 2 == t.a
    return f"18 witnesses; scan found {scan.total} solutions, t in {sorted({t.a for t in scan.t_values})}"


def c8_gauss():
    assert find_odd_index(1) == 9
    w = gauss_witness(0)
    expect = {"p": 1, "x": 10864, "y": 40545, "w": 679, "q": 1, "z": 0, "r": 1, "t": -3621, "s": 0}
    assert {k: getattr(w, k).a for k in expect} == expect
    for a in range(-5, 6):
        w = gauss_witness(a)
        assert gauss_verify(w).holds, a
        assert all(getattr(w, k).b == 0 for k in GAUSS_VARS), a
    return "a in [-5, 5]"


def c9_alpha_realness():
    res = alpha_equation_solutions(20)
    assert res.all_real
    got = {(x.a, y.a) for x, y in res.solutions}
    assert got <= alpha_families(20) and res.in_families
    return f"{len(got)} solutions, all real, all in the four families"


def c10_enumeration():
    for n in range(1, 10**4 + 1):
        p = nth_polynomial(n)
        assert all(v <= n - 1 for v in p.variables()), n
        assert all(i < n for i in recursion_indices(n)), n
    rows = diagonal_report(50, 20)
    resolved = 0
    for r in rows:
        if r.chi_d is None:
            continue
        resolved += 1
        assert r.chi_v == 1 - r.chi_d
        S = universal_set(r.n)
        if r.result.is_member:
            assert S.q.evaluate([r.n, *r.result.witness]) == 0
        else:
            # independent evidence: no root in a small box either
            assert not membership(S, [r.n], 2).is_member
    return f"{resolved}/50 rows resolved"


def c11_liar():
    rep = liar_exhaustive(3, 3)
    assert rep["counterexamples"] == 0
    return f"{rep['cases']} systems x T, 0 counterexamples"


def c12_diagonal():
    rep = diagonal_exhaustive(3, 3)
    assert rep["counterexamples"] == 0
    return f"{rep['cases']} (g, alpha) pairs, 0 counterexamples"


QUINE_CORPUS = [
    f"yields falsehood when appended to its own quotation: {HOLE}",
    HOLE,
    f"{HOLE} is not provable",
    f"the sentence {HOLE} is false",
    f"print({HOLE})",
    f"no proof of {HOLE} exists",
    f"{HOLE} ∉ T",
    f"if {HOLE} halts then loop forever",
    f"«{HOLE}» has more than ten letters",
    f"   leading and trailing space {HOLE}   ",
]


def c13_quines():
    assert len(QUINE_CORPUS) == 10
    for t in QUINE_CORPUS:
        q = quine_sentence(t)
        assert q.sentence == t.replace(HOLE, q.term)
        assert evaluate_term(q.term) == quote(q.sentence)
    return "10 templates"


CRITERIA = [
    (1, "Pell invariant", 1, c1_pell),
    (2, "Pell square congruence grid", 1, c2_lemma5),
    (3, "four squares", 10, c3_four_squares),
    (4, "pairing clauses", 1, c4_pairing),
    (5, "closure-operation oracle equivalence", 30, c5_closure_oracle),
    (6, "conjoin soundness", 10, c6_conjoin),
    (7, "Sigma round trip and square t", 60, c7_sigma),
    (8, "Gaussian round trip", 5, c8_gauss),
    (9, "alpha-equation realness", 10, c9_alpha_realness),
    (10, "enumeration sanity and diagonal report", 30, c10_enumeration),
    (11, "Liar theorem exhaustive", 60, c11_liar),
    (12, "diagonal schema exhaustive", 60, c12_diagonal),
    (13, "quine fixed points", 1, c13_quines),
]


@pytest.mark.parametrize("number,title,limit,check", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, limit, check, capsys):
    ok, in_time, detail, elapsed = run_criterion(number, title, limit, check, capsys)
    assert ok, detail
    assert in_time, f"{elapsed:.2f}s exceeds {limit}s"


if __name__ == "__main__":
    sys.path.insert(0, str(__import__("pathlib").Path(__file__).parent))
    results = [run_criterion(*c) for c in CRITERIA]
    sys.exit(0 if all(ok and t for ok, t, _, _ in results) else 1)
