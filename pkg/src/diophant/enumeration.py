"""Pairing functions, the recursive enumeration of natural-coefficient
polynomials, the one-parameter universal sets ``D_n`` and the diagonal set
``V = {n : n not in D_n}`` under a bounded oracle.

Indices are 1-based.  The characteristic convention is 1 = member.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from math import isqrt

from .dioset import DiophantineSet
from .errors import DomainError
from .polynomial import Polynomial
from .rings import ZZ, RingElement
from .search import TriState, _scan_polynomial

__all__ = [
    "pair",
    "left",
    "right",
    "recursion_indices",
    "nth_polynomial",
    "universal_set",
    "diagonal_membership",
    "diagonal_report",
    "DiagonalRow",
]


def pair(x: int, y: int) -> int:
    """Cantor pairing on positive integers: ``(x+y-2)(x+y-1)/2 + x``."""
    if x < 1 or y < 1:
        raise DomainError("pairing arguments must be >= 1")
    s = x + y
    return (s - 2) * (s - 1) // 2 + x


def _unpair(z: int) -> tuple[int, int]:
    if z < 1:
        raise DomainError("index must be ≥ 1")
    # largest w with w(w+1)/2 < z
    w = (isqrt(8 * z) - 1) // 2
    while w * (w + 1) // 2 >= z:
        w -= 1
    while (w + 1) * (w + 2) // 2 < z:
        w += 1
    x = z - w * (w + 1) // 2
    return x, w + 2 - x


def left(z: int) -> int:
    return _unpair(z)[0]


def right(z: int) -> int:
    return _unpair(z)[1]


def recursion_indices(n: int) -> tuple[int, ...]:
    """Indices that ``P_n`` is built from (empty for the base cases)."""
    if n < 1:
        raise DomainError("index must be ≥ 1")
    if n == 1 or n % 3 == 2:
        return ()
    i = n // 3
    return (left(i), right(i))


_poly_memo: dict[int, Polynomial] = {}
_poly_lock = threading.Lock()


def _compact(n: int) -> Polynomial:
    """``P_n`` with the smallest arity holding its variables."""
    got = _poly_memo.get(n)
    if got is not None:
        return got
    # iterative fill from below keeps recursion depth flat
    for m in range(1, n + 1):
        if m in _poly_memo:
            continue
        if m == 1:
            p = Polynomial.const(ZZ, 1, 1)
        elif m % 3 == 2:
            i = (m + 1) // 3
            p = Polynomial.var(ZZ, i - 1, i)
        else:
            a, b = recursion_indices(m)
            pa, pb = _poly_memo[a], _poly_memo[b]
            p = pa + pb if m % 3 == 0 else pa * pb
        with _poly_lock:
            _poly_memo.setdefault(m, p)
    return _poly_memo[n]


def nth_polynomial(n: int) -> Polynomial:
    """``P_1 = 1``, ``P_{3i-1} = x_{i-1}``, ``P_{3i} = P_{L(i)} + P_{R(i)}``,
    ``P_{3i+1} = P_{L(i)} P_{R(i)}``; returned with arity ``n``."""
    if n < 1:
        raise DomainError("index must be ≥ 1")
    return _compact(n).with_arity(n)


def universal_set(n: int) -> DiophantineSet:
    """``D_n = {x0 : exists x1..xn, P_{L(n)} = P_{R(n)}}`` over the naturals."""
    if n < 1:
        raise DomainError("index must be ≥ 1")
    q = _compact(left(n)).with_arity(n + 1) - _compact(right(n)).with_arity(n + 1)
    return DiophantineSet(ZZ, 1, n, q, "N")


def _sign_certificate(p: Polynomial) -> bool:
    # over the naturals every monomial is >= 0, so one common sign plus a
    # nonzero constant term keeps the value away from zero
    c = p.constant_term()
    if c == 0:
        return False
    signs = {coeff.a > 0 for coeff, _ in p.terms}
    return len(signs) == 1


def _parity_certificate(p: Polynomial, used: list[int], limit: int = 16) -> bool:
    if len(used) > limit:
        return False
    base = [0] * p.arity
    for bits in itertools.product((0, 1), repeat=len(used)):
        point = list(base)
        for i, b in zip(used, bits):
            point[i] = b
        if p.evaluate(point).a % 2 == 0:
            return False
    return True


def diagonal_membership(n: int, budget: int) -> TriState:
    """Bounded decision of ``n in D_n``.

    The witness search runs over shells ``[0, b]^k`` for ``b = 1..budget``
    on the auxiliary variables actually present, lexicographically within a
    shell.  Non-membership is only reported with an emptiness certificate.
    """
    if n < 1:
        raise DomainError("index must be ≥ 1")
    if budget < 0:
        raise DomainError("budget must be >= 0")
    S = universal_set(n)
    p = S.q.partial({0: n})
    zeros = tuple(RingElement(0, 0, ZZ) for _ in range(n))
    if p.is_constant():
        if p.is_zero():
            return TriState("member", zeros, 0)
        return TriState("nonmember", None, budget)
    if budget == 0:
        return TriState("unknown", None, 0)
    used = sorted(p.variables())
    if _sign_certificate(p) or _parity_certificate(p, used):
        return TriState("nonmember", None, budget)
    for b in range(1, budget + 1):
        values = [(v, 0) for v in range(b + 1)]
        for combo in _scan_polynomial(p, used, values, True):
            w = [0] * n
            for i, v in zip(used, combo):
                w[i - 1] = v[0]
            point = [n] + w
            if S.q.evaluate(point) != 0:  # pragma: no cover - exact re-check
                raise AssertionError("diagonal witness failed re-verification")
            return TriState("member", tuple(RingElement(v, 0, ZZ) for v in w), b)
    return TriState("unknown", None, budget)


@dataclass(frozen=True)
class DiagonalRow:
    n: int
    result: TriState

    @property
    def chi_d(self) -> int | None:
        """Characteristic of ``n in D_n`` (1 = member), None when unresolved."""
        if not self.result.resolved:
            return None
        return 1 if self.result.is_member else 0

    @property
    def chi_v(self) -> int | None:
        c = self.chi_d
        return None if c is None else 1 - c

    def to_json(self) -> dict:
        out = {"n": self.n, "state": self.result.state}
        if self.result.witness is not None:
            out["witness"] = [w.a for w in self.result.witness]
        if self.chi_v is not None:
            out["chi_V"] = self.chi_v
        return out


def diagonal_report(N: int, budget: int) -> list[DiagonalRow]:
    if N < 1:
        raise DomainError("N must be >= 1")
    return [DiagonalRow(n, diagonal_membership(n, budget)) for n in range(1, N + 1)]
