from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophant.errors import ArityMismatch, IndexOutOfRange, NonInjectiveMap, RingMismatch
from diophant.expr import PolyExpr
from diophant.polynomial import Polynomial, poly_add, poly_eval, poly_mul, remap_variables
from diophant.rings import GAUSS, ZZ, RingElement, quad


def v(i, arity=3, R=ZZ):
    return Polynomial.var(R, i, arity)


def test_eval_examples():
    p = v(0, 2) ** 2 - 2 * v(1, 2) ** 2
    assert poly_eval(p, [3, 2]) == 1
    assert poly_eval(Polynomial.zero(ZZ, 2), [7, -4]) == 0
    assert poly_eval(v(0) + v(1) - v(2), [1, 2, 3]) == 0


def test_arith_examples():
    x = v(0, 1)
    assert poly_mul(x + 1, x - 1) == x**2 - 1
    p = 3 * x**2 - 5
    assert poly_add(p, Polynomial.zero(ZZ, 1)) == p
    a, b = v(0, 2), v(1, 2)
    assert (a - b) ** 2 == a**2 - 2 * a * b + b**2


def test_remap_examples():
    a, b = v(0, 2), v(1, 2)
    p = a**2 - 2 * b
    swapped = remap_variables(p, [1, 0], 2)
    assert swapped == b**2 - 2 * a
    emb = remap_variables(p, [2, 0], 4)
    assert emb.evaluate([5, 0, 3, 9]) == p.evaluate([3, 5])
    assert remap_variables(swapped, [1, 0], 2) == p


def test_remap_errors():
    p = v(0, 2) + v(1, 2)
    with pytest.raises(NonInjectiveMap):
        remap_variables(p, [0, 0], 2)
    with pytest.raises(IndexOutOfRange):
        remap_variables(p, [0, 5], 3)


def test_ring_and_arity_guards():
    with pytest.raises(RingMismatch):
        v(0, 1) + Polynomial.var(GAUSS, 0, 1)
    with pytest.raises(ArityMismatch):
        v(0, 3).evaluate([1])
    with pytest.raises(ArityMismatch):
        v(2, 3).with_arity(2)


def test_quadratic_ring_coefficients():
    Q2 = quad(2)
    x = Polynomial.var(Q2, 0, 1)
    s = RingElement(0, 1, Q2)
    p = x**2 - 2
    assert p.evaluate([s]) == 0
    assert (x - s).conj() == x + s


def test_partial_and_json():
    p = v(0) * v(1) + v(2) ** 3 - 4
    q = p.partial({1: 2})
    assert q.variables() == {0, 2}
    assert q.evaluate([5, 99, 1]) == p.evaluate([5, 2, 1])
    assert Polynomial.from_json(p.to_json()) == p


@st.composite
def polys(draw, arity=3):
    R = draw(st.sampled_from([ZZ, GAUSS, quad(2), quad(3)]))
    n = draw(st.integers(0, 5))
    terms = []
    for _ in range(n):
        e = tuple(draw(st.integers(0, 3)) for _ in range(arity))
        c = (draw(st.integers(-9, 9)), 0 if R is ZZ else draw(st.integers(-9, 9)))
        terms.append((e, c))
    return Polynomial(R, arity, terms)


def points(R, arity=3):
    b = st.integers(-6, 6)
    if R is ZZ:
        return st.tuples(*[b.map(lambda a: RingElement(a, 0, R)) for _ in range(arity)])
    return st.tuples(*[st.tuples(b, b).map(lambda ab: RingElement(*ab, R)) for _ in range(arity)])


@settings(max_examples=1000)
@given(st.data())
def test_evaluation_is_a_homomorphism(data):
    p = data.draw(polys())
    q = data.draw(polys().filter(lambda q: q.ring == p.ring))
    x = data.draw(points(p.ring))
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)


@given(polys(), st.permutations(range(5)).map(lambda m: m[:3]))
def test_remap_preserves_coefficients(p, m):
    r = remap_variables(p, m, 5)
    assert sorted(c.to_json() for c, _ in r.terms) == sorted(c.to_json() for c, _ in p.terms)


@given(st.data())
def test_polyexpr_matches_expansion(data):
    p = data.draw(polys())
    q = data.draw(polys().filter(lambda q: q.ring == p.ring))
    e = (PolyExpr.leaf(p) * PolyExpr.leaf(q) + PolyExpr.leaf(q)) ** 2
    x = data.draw(points(p.ring))
    assert e.expand() == (p * q + q) ** 2
    assert e.evaluate(x) == ((p * q + q) ** 2).evaluate(x)


def test_polyexpr_compose_and_remap():
    x, y = v(0, 2), v(1, 2)
    inner = x**2 - 3 * y
    e = PolyExpr.compose(inner, [PolyExpr.leaf(x + y), PolyExpr.leaf(x * y)])
    assert e.expand() == (x + y) ** 2 - 3 * x * y
    r = e.remap([1, 0], 2)
    assert r.expand() == remap_variables((x + y) ** 2 - 3 * x * y, [1, 0], 2)
