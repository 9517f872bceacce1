from __future__ import annotations

from math import isqrt

import pytest

from diophant.errors import DomainError
from diophant.numtheory import find_odd_index
from diophant.polynomial import Polynomial
from diophant.rings import GAUSS, ZZ, RingElement, quad
from diophant.reduction import (
    GAUSS_VARS,
    GaussWitness,
    alpha_equation_solutions,
    build_sigma,
    gauss_verify,
    gauss_witness,
    nat_definition,
    nat_membership_scan,
    nat_witness,
    pell_e,
    reduce_equation_quad,
    sigma_box_scan,
    sigma_witness,
)


def test_build_sigma():
    assert pell_e(2) == 8 and pell_e(3) == 3 and pell_e(5) == 80
    eqs = build_sigma(2)
    assert len(eqs) == 5 and all(p.arity == 11 for p in eqs)
    Q2 = quad(2)
    x, y = Polynomial.var(Q2, 1, 11), Polynomial.var(Q2, 2, 11)
    assert eqs[0] == x**2 - 8 * y**2 - 1
    with pytest.raises(DomainError):
        build_sigma(4)


def test_sigma_witness_example():
    w = sigma_witness(2, 1)
    got = {k: v.a for k, v in w.to_json().items() if k != "d" for v in [RingElement(*v, quad(2))]}
    assert got == {"t": 1, "x": 17, "y": 6, "u": 17, "v": 6, "z": 0, "w": 1, "h": 5, "q": 3, "r": 0, "s": 0}
    assert w.holds()


def test_sigma_witness_zero():
    w = sigma_witness(2, 0)
    assert (w.t, w.u, w.v, w.z, w.w) == (0, 1, 0, 0, 0)
    assert w.holds()


def test_sigma_round_trip_grid():
    for d in (2, 3, 5):
        for k in range(6):
            w = sigma_witness(d, k)
            assert w.holds() and w.t == k * k
            assert all(r == 0 for r in w.residuals())


def test_conjugation_symmetry():
    for d in (2, 3):
        eqs = [p.conj() for p in build_sigma(d)]
        for w in [sigma_witness(d, 2), *sigma_box_scan(d, 2).examples[:5]]:
            c = w.conj().values()
            assert all(p.evaluate(c) == 0 for p in eqs)


def test_sigma_box_scan_finds_only_squares():
    res = sigma_box_scan(2, 3)
    assert res.examples
    for w in res.examples:
        assert w.holds()
        t = w.t
        assert t.b == 0 and t.a >= 0 and isqrt(t.a) ** 2 == t.a
    # the k = 0 solution lies inside radius 3
    small = sigma_witness(2, 0)
    assert any(w.values()[:7] == small.values()[:7] for w in res.examples)


def test_nat_definition_structure_and_witness():
    Q = nat_definition(2)
    assert Q.arity == 45
    assert Q.evaluate(nat_witness(2, 2)) == 0
    bad = nat_witness(2, 2)
    bad[0] = RingElement(3, 0, quad(2))
    assert Q.evaluate(bad) != 0


def test_nat_scan_evidence():
    Q2 = quad(2)
    assert not nat_membership_scan(2, RingElement(0, 1, Q2), 2).found
    hit = nat_membership_scan(2, RingElement(0, 0, Q2), 3)
    assert hit.found and nat_definition(2).evaluate(list(hit.root)) == 0
    # t = 1 needs y = 6 in its Sigma copy, outside this box: evidence, not proof
    assert not nat_membership_scan(2, RingElement(1, 0, Q2), 3).found


def test_reduce_equation_quad():
    a0 = Polynomial.var(ZZ, 0, 1)
    red = reduce_equation_quad(a0 - 2, 2)
    assert red.R.arity == 45
    assert red.R.evaluate(red.witness([2])) == 0
    with pytest.raises(DomainError):
        red.witness([3])

    none = reduce_equation_quad(a0**2 - 2, 2)
    assert none.box_scan(2)["root"] is None

    a = [Polynomial.var(ZZ, i, 2) for i in range(2)]
    zero = reduce_equation_quad(a[0] + a[1] - a[0] - a[1], 3)
    assert zero.R.evaluate(zero.witness([0, 0])) == 0
    assert zero.R.evaluate(zero.witness([4, 1])) == 0


def test_reduce_forward_soundness_fixtures():
    x = [Polynomial.var(ZZ, i, 2) for i in range(2)]
    for P, sol in [(x[0] + x[1] - 5, [2, 3]), (x[0] * x[1] - 4, [1, 4]), (x[0] ** 2 - x[1], [2, 4])]:
        red = reduce_equation_quad(P, 5)
        assert red.R.evaluate(red.witness(sol)) == 0


def test_gauss_witness_worked_instance():
    assert find_odd_index(1) == 9
    w = gauss_witness(0)
    got = {k: getattr(w, k).a for k in GAUSS_VARS}
    assert got == {"a": 0, "p": 1, "x": 10864, "y": 40545, "w": 679, "q": 1, "z": 0, "s": 0, "r": 1, "t": -3621,
                   "v": got["v"], "u": got["u"]}
    assert gauss_verify(w).holds


def test_gauss_round_trip():
    for a in range(-5, 6):
        w = gauss_witness(a)
        assert gauss_verify(w).holds
        assert all(getattr(w, k).b == 0 for k in GAUSS_VARS)
    assert gauss_witness(-1).p == -1


def test_gauss_verify_failures():
    w = gauss_witness(0)
    bad = w.replace(y=w.y + 1)
    rep = gauss_verify(bad)
    assert not rep.holds and rep.failed == [5, 7]
    zero = GaussWitness.of(**{k: 0 for k in GAUSS_VARS})
    rep = gauss_verify(zero)
    assert not rep.holds and 2 in rep.failed


def test_gauss_json_round_trip():
    w = gauss_witness(2)
    assert GaussWitness.from_json(w.to_json()) == w


def test_alpha_equation_solutions():
    res = alpha_equation_solutions(5)
    pairs = {(x.a, y.a) for x, y in res.solutions}
    assert {(1, 0), (0, 1), (4, 1), (1, 4), (-1, 0)} <= pairs
    assert res.all_real and res.in_families and res.families_covered
    for x, y in res.solutions:
        assert x * x - 4 * x * y + y * y == 1
    assert all(e.ring == GAUSS for s in res.solutions for e in s)
