"""Canonical sparse multivariate polynomials over a :class:`~diophant.rings.Ring`.

Terms are kept in a dict ``exponents -> (a, b)`` with no zero coefficients.
The public ``terms`` view is sorted in graded lexicographic order (higher
total degree first, then lexicographically larger exponent vectors first),
so two polynomials are equal exactly when their term lists are equal.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

from .errors import ArityMismatch, IndexOutOfRange, NonInjectiveMap, RingMismatch
from .rings import Ring, RingElement

__all__ = ["Polynomial", "poly_eval", "poly_add", "poly_mul", "poly_neg", "remap_variables"]

Pair = tuple[int, int]


def _pair_mul(x: Pair, y: Pair, d: int) -> Pair:
    return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _pair_pow(x: Pair, k: int, d: int) -> Pair:
    result = (1, 0)
    while k:
        if k & 1:
            result = _pair_mul(result, x, d)
        x = _pair_mul(x, x, d)
        k >>= 1
    return result


def grlex_key(exps: tuple[int, ...]):
    return (-sum(exps), tuple(-e for e in exps))


def as_pair(value, ring: Ring) -> Pair:
    if isinstance(value, RingElement):
        if value.ring != ring:
            raise RingMismatch(f"{value.ring} vs {ring}")
        return (value.a, value.b)
    if isinstance(value, int):
        return (value, 0)
    if isinstance(value, tuple) and len(value) == 2:
        if ring.kind == "Z" and value[1] != 0:
            raise RingMismatch("non-rational coefficient in Z")
        return (int(value[0]), int(value[1]))
    raise TypeError(f"cannot use {value!r} as an element of {ring}")


class Polynomial:
    __slots__ = ("ring", "arity", "_terms", "_hash")

    def __init__(self, ring: Ring, arity: int, terms: Mapping | Iterable = ()):
        if arity < 0:
            raise ArityMismatch("arity must be >= 0")
        self.ring = ring
        self.arity = arity
        acc: dict[tuple[int, ...], Pair] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise ArityMismatch(f"exponent vector {exps} does not have length {arity}")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = as_pair(coeff, ring)
            old = acc.get(exps, (0, 0))
            acc[exps] = (old[0] + c[0], old[1] + c[1])
        self._terms = {e: c for e, c in acc.items() if c != (0, 0)}
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, arity: int, terms: dict) -> Polynomial:
        p = cls.__new__(cls)
        p.ring = ring
        p.arity = arity
        p._terms = {e: c for e, c in terms.items() if c != (0, 0)}
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring, arity: int = 0) -> Polynomial:
        return cls._raw(ring, arity, {})

    @classmethod
    def const(cls, ring: Ring, value, arity: int = 0) -> Polynomial:
        return cls._raw(ring, arity, {(0,) * arity: as_pair(value, ring)})

    @classmethod
    def var(cls, ring: Ring, index: int, arity: int | None = None) -> Polynomial:
        if arity is None:
            arity = index + 1
        if not 0 <= index < arity:
            raise IndexOutOfRange(f"variable {index} outside arity {arity}")
        exps = [0] * arity
        exps[index] = 1
        return cls._raw(ring, arity, {tuple(exps): (1, 0)})

    # -- views ------------------------------------------------------------
    @property
    def terms(self) -> list[tuple[RingElement, tuple[int, ...]]]:
        return [
            (RingElement(c[0], c[1], self.ring), e)
            for e, c in sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))
        ]

    def pair_terms(self) -> list[tuple[tuple[int, ...], Pair]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> RingElement:
        a, b = self._terms.get((0,) * self.arity, (0, 0))
        return RingElement(a, b, self.ring)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def variables(self) -> set[int]:
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    def max_exponent(self) -> int:
        return max((max(e, default=0) for e in self._terms), default=0)

    # -- arity handling ---------------------------------------------------
    def with_arity(self, arity: int) -> Polynomial:
        if arity == self.arity:
            return self
        if arity < self.arity:
            used = self.variables()
            if used and max(used) >= arity:
                raise ArityMismatch(f"variable {max(used)} does not fit arity {arity}")
            return Polynomial._raw(self.ring, arity, {e[:arity]: c for e, c in self._terms.items()})
        pad = (0,) * (arity - self.arity)
        return Polynomial._raw(self.ring, arity, {e + pad: c for e, c in self._terms.items()})

    def _unify(self, other) -> tuple[Polynomial, Polynomial]:
        if isinstance(other, (int, RingElement, tuple)):
            other = Polynomial.const(self.ring, other, self.arity)
        if not isinstance(other, Polynomial):
            return NotImplemented, NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        n = max(self.arity, other.arity)
        return self.with_arity(n), other.with_arity(n)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        p, q = self._unify(other)
        if p is NotImplemented:
            return NotImplemented
        acc = dict(p._terms)
        for e, c in q._terms.items():
            old = acc.get(e, (0, 0))
            acc[e] = (old[0] + c[0], old[1] + c[1])
        return Polynomial._raw(p.ring, p.arity, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, self.arity, {e: (-c[0], -c[1]) for e, c in self._terms.items()})

    def __sub__(self, other):
        p, q = self._unify(other)
        if p is NotImplemented:
            return NotImplemented
        return p + (-q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p, q = self._unify(other)
        if p is NotImplemented:
            return NotImplemented
        d = p.ring.d
        acc: dict[tuple[int, ...], Pair] = {}
        for e1, c1 in p._terms.items():
            for e2, c2 in q._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = _pair_mul(c1, c2, d)
                old = acc.get(e)
                acc[e] = c if old is None else (old[0] + c[0], old[1] + c[1])
        return Polynomial._raw(p.ring, p.arity, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.ring, 1, self.arity)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conj(self) -> Polynomial:
        """Apply the ring conjugation to every coefficient."""
        return Polynomial._raw(self.ring, self.arity, {e: (c[0], -c[1]) for e, c in self._terms.items()})

    # -- equality ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.ring, other, self.arity)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.arity == other.arity
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation -------------------------------------------------------
    def eval_pairs(self, values: Sequence[Pair]) -> Pair:
        d = self.ring.d
        acc_a = acc_b = 0
        cache: dict[tuple[int, int], Pair] = {}
        for e, c in self._terms.items():
            m = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    pw = cache.get(key)
                    if pw is None:
                        pw = cache[key] = _pair_pow(values[i], k, d)
                    m = _pair_mul(m, pw, d)
            acc_a += m[0]
            acc_b += m[1]
        return (acc_a, acc_b)

    def evaluate(self, values: Sequence) -> RingElement:
        if len(values) < self.arity:
            raise ArityMismatch(f"need {self.arity} values, got {len(values)}")
        pairs = [as_pair(v, self.ring) for v in values[: self.arity]]
        a, b = self.eval_pairs(pairs)
        return RingElement(a, b, self.ring)

    __call__ = evaluate

    def partial(self, fixed: Mapping[int, object]) -> Polynomial:
        """Substitute values for some variables; arity is unchanged."""
        d = self.ring.d
        vals = {i: as_pair(v, self.ring) for i, v in fixed.items()}
        acc: dict[tuple[int, ...], Pair] = {}
        for e, c in self._terms.items():
            m = c
            ne = list(e)
            for i, v in vals.items():
                if e[i]:
                    m = _pair_mul(m, _pair_pow(v, e[i], d), d)
                    ne[i] = 0
            key = tuple(ne)
            old = acc.get(key, (0, 0))
            acc[key] = (old[0] + m[0], old[1] + m[1])
        return Polynomial._raw(self.ring, self.arity, acc)

    def remap(self, mapping: Mapping[int, int] | Sequence[int], new_arity: int) -> Polynomial:
        return remap_variables(self, mapping, new_arity)

    # -- text / json ------------------------------------------------------
    def __str__(self):
        from .syntax import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self.ring}, arity={self.arity}, {str(self)!r})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "arity": self.arity,
            "terms": [{"c": [c[0], c[1]], "e": list(e)} for e, c in self.pair_terms()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Polynomial:
        ring = Ring.from_json(obj["ring"])
        arity = int(obj["arity"])
        return cls(ring, arity, [(t["e"], tuple(t["c"])) for t in obj["terms"]])


def poly_eval(p: Polynomial, values: Sequence) -> RingElement:
    return p.evaluate(values)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_neg(p: Polynomial) -> Polynomial:
    return -p


def _check_map(mapping, arity: int, new_arity: int) -> list[int]:
    if isinstance(mapping, Mapping):
        m = [mapping.get(i, None) for i in range(arity)]
    else:
        m = list(mapping)
        if len(m) < arity:
            m += [None] * (arity - len(m))
    for i, j in enumerate(m):
        if j is None:
            raise IndexOutOfRange(f"variable {i} has no image")
        if not 0 <= j < new_arity:
            raise IndexOutOfRange(f"image {j} of variable {i} outside [0, {new_arity})")
    if len(set(m)) != len(m):
        raise NonInjectiveMap(f"map {m} is not injective")
    return m


def remap_variables(p: Polynomial, mapping, new_arity: int) -> Polynomial:
    """Rename variable ``i`` to ``mapping[i]`` in a polynomial of arity ``new_arity``.

    ``result(a) == p(a[mapping[0]], a[mapping[1]], ...)`` for every assignment ``a``.
    """
    m = _check_map(mapping, p.arity, new_arity)
    acc = {}
    for e, c in p._terms.items():
        ne = [0] * new_arity
        for i, k in enumerate(e):
            ne[m[i]] = k
        acc[tuple(ne)] = c
    return Polynomial._raw(p.ring, new_arity, acc)
