"""Pell sequences, Lagrange four squares, fundamental Pell solutions, the
``alpha`` recurrence and extended gcd.

All arithmetic is on Python ints, so nothing overflows.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import BothZero, DomainError, PeriodExhausted
from .rings import is_squarefree

__all__ = [
    "PellPair",
    "pell_sequence",
    "pell_table",
    "check_lemma5",
    "four_squares",
    "pell_fundamental",
    "alpha",
    "alpha_period",
    "find_odd_index",
    "ext_gcd",
    "check_alpha_multiplication",
]


class _GrowingTable:
    """Append-only memo of a second-order integer recurrence.

    Writers extend under a lock; readers only ever see fully computed prefixes.
    """

    def __init__(self, seed0, seed1, step):
        self._values = [seed0, seed1]
        self._step = step
        self._lock = threading.Lock()

    def get(self, n: int):
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            values = self._values
            while len(values) <= n:
                values.append(self._step(values[-1], values[-2]))
            return values[n]


@dataclass(frozen=True)
class PellPair:
    """``x + y*sqrt(a^2 - 1) = (a + sqrt(a^2 - 1))**n``."""

    a: int
    n: int
    x: int
    y: int

    def __post_init__(self):
        e = self.a * self.a - 1
        if self.x * self.x - e * self.y * self.y != 1:
            raise DomainError(f"({self.x}, {self.y}) does not solve x^2 - {e} y^2 = 1")


_pell_tables: dict[int, tuple[_GrowingTable, _GrowingTable]] = {}
_pell_lock = threading.Lock()


def pell_table(a: int) -> tuple[_GrowingTable, _GrowingTable]:
    if a < 2:
        raise DomainError(f"Pell sequences need a >= 2, got {a}")
    tables = _pell_tables.get(a)
    if tables is None:
        with _pell_lock:
            tables = _pell_tables.get(a)
            if tables is None:
                two_a = 2 * a
                step = lambda cur, prev: two_a * cur - prev  # noqa: E731
                tables = (_GrowingTable(1, a, step), _GrowingTable(0, 1, step))
                _pell_tables[a] = tables
    return tables


def pell_sequence(a: int, n: int) -> PellPair:
    """``(x_n(a), y_n(a))`` via ``s_{n+1} = 2a s_n - s_{n-1}``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    xs, ys = pell_table(a)
    return PellPair(a, n, xs.get(n), ys.get(n))


@dataclass(frozen=True)
class Lemma5Report:
    a: int
    n: int
    k: int
    modulus: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.holds


def check_lemma5(a: int, n: int, k: int) -> Lemma5Report:
    """Check ``y_{nk}^2 = y_n^2 k^2 (mod y_n^4)`` exactly."""
    if n < 1 or k < 1:
        raise DomainError("n and k must be >= 1")
    y_n = pell_sequence(a, n).y
    y_nk = pell_sequence(a, n * k).y
    m = y_n**4
    return Lemma5Report(a, n, k, m, (y_nk * y_nk) % m, (y_n * y_n * k * k) % m)


def _three_square(m: int) -> bool:
    """Legendre: ``m`` is a sum of three squares unless ``m = 4^a (8b + 7)``."""
    while m and m % 4 == 0:
        m //= 4
    return m % 8 != 7


def four_squares(n: int) -> tuple[int, int, int, int]:
    """Lexicographically greatest ``k1 >= k2 >= k3 >= k4 >= 0`` with squares summing to n.

    Descending search on ``k1``, then exhaustive on the remaining parts;
    multiples of 8 reduce to ``n / 4`` and hopeless ``k1`` are skipped.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    if n and n % 8 == 0:
        # every decomposition of a multiple of 8 has only even parts
        return tuple(2 * k for k in four_squares(n // 4))
    for k1 in range(isqrt(n), -1, -1):
        r1 = n - k1 * k1
        if r1 > 3 * k1 * k1:
            break
        if not _three_square(r1):
            continue
        for k2 in range(min(k1, isqrt(r1)), -1, -1):
            r2 = r1 - k2 * k2
            if r2 > 2 * k2 * k2:
                break
            for k3 in range(min(k2, isqrt(r2)), -1, -1):
                r3 = r2 - k3 * k3
                if r3 > k3 * k3:
                    break
                k4 = isqrt(r3)
                if k4 * k4 == r3:
                    return (k1, k2, k3, k4)
    raise AssertionError(f"no four-square decomposition of {n}")  # pragma: no cover


def pell_fundamental(d: int) -> tuple[int, int]:
    """Least ``(a, b)`` with ``b >= 1`` and ``a^2 - d b^2 = 1``.

    Continued fraction of sqrt(d): the convergent before the end of the first
    period (or of the second, when the period length is odd) solves it.
    """
    if d < 2 or not is_squarefree(d):
        raise DomainError(f"d = {d} must be square-free and >= 2")
    a0 = isqrt(d)
    m, den, term = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - d * q * q != 1:
        m = den * term - m
        den = (d - m * m) // den
        term = (a0 + m) // den
        p_prev, p = p, term * p + p_prev
        q_prev, q = q, term * q + q_prev
    return p, q


def _alpha_step(cur, prev):
    return 4 * cur - prev


_alpha_table = _GrowingTable(0, 1, _alpha_step)


def alpha(n: int, modulus: int | None = None) -> int:
    """``alpha(0)=0, alpha(1)=1, alpha(n+1) = 4 alpha(n) - alpha(n-1)``.

    Negative indices follow the recurrence backwards, giving
    ``alpha(-n) = -alpha(n)``.  With ``modulus`` the value is reduced and
    computed by iteration modulo ``modulus``.
    """
    if modulus is not None:
        if modulus < 2:
            raise DomainError("modulus must be >= 2")
        sign = -1 if n < 0 else 1
        prev, cur = 0, 1
        if n == 0:
            return 0
        for _ in range(abs(n) - 1):
            prev, cur = cur, (4 * cur - prev) % modulus
        return (sign * cur) % modulus
    if n < 0:
        return -_alpha_table.get(-n)
    return _alpha_table.get(n)


def alpha_period(modulus: int) -> int:
    """Least ``P > 0`` with ``(alpha(P), alpha(P+1)) = (0, 1)`` mod ``modulus``."""
    if modulus < 2:
        raise DomainError("modulus must be >= 2")
    prev, cur = 0, 1
    j = 0
    limit = 6 * modulus * modulus + 6  # pigeonhole bound on pair states
    while True:
        prev, cur = cur, (4 * cur - prev) % modulus
        j += 1
        if prev == 0 and cur == 1:
            return j
        if j > limit:  # pragma: no cover - the sequence is purely periodic
            raise PeriodExhausted(f"no period found modulo {modulus}")


def find_odd_index(p: int) -> int:
    """Least odd ``n > 3`` with ``alpha(n - 1) = 0 (mod 4(3p^2 + 1))``."""
    m = 4 * (3 * p * p + 1)
    period = alpha_period(m)
    # scan j = n - 1 from 4 over one full period
    prev, cur = 0, 1  # alpha(0), alpha(1)
    for _ in range(3):
        prev, cur = cur, (4 * cur - prev) % m
    # now prev = alpha(3), cur = alpha(4)
    j = 4
    while j <= 4 + period:
        if cur == 0 and j % 2 == 0:
            return j + 1
        prev, cur = cur, (4 * cur - prev) % m
        j += 1
    raise PeriodExhausted(f"no odd index found for p = {p} within period {period}")


def ext_gcd(u: int, v: int) -> tuple[int, int, int]:
    """``(g, r, t)`` with ``g = gcd(u, v) >= 0`` and ``r*u + t*v = g``."""
    if u == 0 and v == 0:
        raise BothZero("gcd(0, 0) is undefined")
    old_r, r = u, v
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class AlphaMultiplicationReport:
    """Verdicts of several readings of the alpha multiplication congruence.

    ``literal``: ``alpha(pn) = (-1)^p p alpha(n-1)^(n-1)  (mod alpha(n))``.
    ``scaled``: the same right side times ``alpha(n)``, modulo ``alpha(n)^2``.
    ``corrected``: ``alpha(pn) = (-1)^(p-1) p alpha(n) alpha(n-1)^(p-1)  (mod alpha(n)^2)``.
    ``quotient``: ``alpha(pn)/alpha(n) = p  (mod alpha(n))``.
    """

    p: int
    n: int
    literal: bool
    scaled: bool
    corrected: bool
    quotient: bool

    @property
    def holds(self) -> bool:
        return self.corrected and self.quotient


def check_alpha_multiplication(p: int, n: int) -> AlphaMultiplicationReport:
    if p % 2 == 0:
        raise DomainError("p must be odd")
    if n < 1:
        raise DomainError("n must be >= 1")
    y = alpha(n)
    x = alpha(n - 1)
    v = alpha(p * n)
    sign = -1 if p % 2 else 1
    ap = abs(p)
    m1 = abs(y)
    m2 = y * y
    lit_rhs = sign * p * x ** (n - 1)
    literal = (v - lit_rhs) % m1 == 0
    scaled = (v - lit_rhs * y) % m2 == 0
    corr_sign = 1 if (ap - 1) % 2 == 0 else -1
    corrected = (v - corr_sign * p * y * x ** (ap - 1)) % m2 == 0
    quotient = v % y == 0 and (v // y - p) % m1 == 0
    return AlphaMultiplicationReport(p, n, literal, scaled, corrected, quotient)


def coprime_offset(x: int) -> int:
    """Least ``s >= 0`` with ``gcd(x, 8s + 3) = 1``."""
    s = 0
    while gcd(x, 8 * s + 3) != 1:
        s += 1
    return s
