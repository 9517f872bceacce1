"""Bounded brute-force root search: the desk-scale stand-in for a semidecision
procedure.

Scan orders are fixed so results are reproducible: naturals ascend from 0,
integers ascend from ``-radius``, ring boxes run over ``(a, b)`` pairs in
lexicographic order.  Tuples of variables are scanned lexicographically with
the first free variable slowest, and the first exact root found is returned,
so the reported witness is the lexicographically least one in scan order.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import ArityMismatch, DomainError
from .expr import PolyExpr
from .kernels.boxscan import candidate_mask, tolerance
from .polynomial import Pair, Polynomial, as_pair
from .rings import Ring, RingElement

__all__ = [
    "SearchDomain",
    "TriState",
    "solve_bounded",
    "all_roots",
    "membership",
    "enumerate_members",
]

CHUNK = 1 << 15


@dataclass(frozen=True)
class SearchDomain:
    ring: Ring
    kind: str  # "N", "Z" or "ring"
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise DomainError("radius must be >= 0")
        if self.kind not in ("N", "Z", "ring"):
            raise DomainError(f"unknown search domain {self.kind!r}")
        if self.kind == "N" and self.ring.kind != "Z":
            raise DomainError("the naturals domain needs ring Z")

    @classmethod
    def for_set(cls, S, radius: int) -> SearchDomain:
        if S.domain == "N":
            return cls(S.ring, "N", radius)
        return cls(S.ring, "Z" if S.ring.kind == "Z" else "ring", radius)

    def values(self) -> list[Pair]:
        r = self.radius
        if self.kind == "N":
            return [(a, 0) for a in range(r + 1)]
        if self.kind == "Z" or self.ring.kind == "Z":
            return [(a, 0) for a in range(-r, r + 1)]
        return [(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)]

    def with_radius(self, radius: int) -> SearchDomain:
        return SearchDomain(self.ring, self.kind, radius)


@dataclass(frozen=True)
class TriState:
    state: str  # "member", "nonmember" or "unknown"
    witness: tuple[RingElement, ...] | None = None
    radius: int | None = None

    @property
    def resolved(self) -> bool:
        return self.state != "unknown"

    @property
    def is_member(self) -> bool:
        return self.state == "member"

    def to_json(self) -> dict:
        out = {"state": self.state}
        if self.witness is not None:
            out["witness"] = [w.to_json() for w in self.witness]
        if self.radius is not None:
            out["radius"] = self.radius
        return out


def _elements(ring: Ring, pairs) -> tuple[RingElement, ...]:
    return tuple(RingElement(a, b, ring) for a, b in pairs)


def _kernel_arrays(p: Polynomial, free: Sequence[int]):
    """Coefficient and exponent arrays of ``p`` restricted to ``free`` variables."""
    terms = p.pair_terms()
    try:
        ca = np.array([float(c[0]) for _, c in terms])
        cb = np.array([float(c[1]) for _, c in terms])
    except OverflowError:
        return None
    exps = np.array([[e[i] for i in free] for e, _ in terms], dtype=np.int64).reshape(len(terms), len(free))
    return exps, ca, cb


def _scan_polynomial(p: Polynomial, free: Sequence[int], values: Sequence[Pair], first_only: bool) -> Iterator[tuple[Pair, ...]]:
    """Yield exact roots of ``p`` over ``values ** len(free)`` in lexicographic order.

    ``p`` must already have every non-free variable substituted.
    """
    k = len(free)
    n_vals = len(values)
    total = n_vals**k
    arrays = _kernel_arrays(p, free)
    vals = np.array(values, dtype=np.float64).reshape(n_vals, 2)
    base = [(0, 0)] * p.arity
    if arrays is None:
        for combo in itertools.product(values, repeat=k):
            point = list(base)
            for i, v in zip(free, combo):
                point[i] = v
            if p.eval_pairs(point) == (0, 0):
                yield combo
        return
    exps, ca, cb = arrays
    tol = tolerance(len(ca), p.degree)
    shape = (n_vals,) * k
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        if k:
            digits = np.stack(np.unravel_index(idx, shape), axis=1)
        else:
            digits = np.zeros((len(idx), 0), dtype=np.int64)
        pa = vals[digits, 0].reshape(len(idx), k)
        pb = vals[digits, 1].reshape(len(idx), k)
        mask = candidate_mask(exps, ca, cb, p.ring.d, pa, pb, tol)
        for row in np.flatnonzero(mask):
            combo = tuple(values[j] for j in digits[row])
            point = list(base)
            for i, v in zip(free, combo):
                point[i] = v
            if p.eval_pairs(point) == (0, 0):
                yield combo


def _roots(q, dom: SearchDomain, fixed: Sequence, free_count: int, first_only: bool):
    if free_count > q.arity:
        raise ArityMismatch(f"free_count {free_count} exceeds arity {q.arity}")
    n_fixed = q.arity - free_count
    if len(fixed) != n_fixed:
        raise ArityMismatch(f"need {n_fixed} fixed values, got {len(fixed)}")
    if q.ring != dom.ring:
        raise DomainError(f"polynomial over {q.ring} searched in {dom.ring}")
    fixed_pairs = [as_pair(v, q.ring) for v in fixed]
    values = dom.values()
    free_idx = list(range(n_fixed, q.arity))

    if isinstance(q, PolyExpr):
        for combo in itertools.product(values, repeat=free_count):
            if q.eval_pairs(fixed_pairs + list(combo)) == (0, 0):
                yield combo
        return

    p = q.partial(dict(enumerate(fixed_pairs))) if n_fixed else q
    used = sorted(p.variables())
    first = values[0] if values else None
    if not used:
        if p.is_zero() and (free_count == 0 or values):
            yield tuple([first] * free_count)
        return
    if not values:
        return
    # variables absent from p take the first scan value, keeping lexicographic leastness
    for combo in _scan_polynomial(p, used, values, first_only):
        full = [first] * free_count
        for i, v in zip(used, combo):
            full[i - n_fixed] = v
        yield tuple(full)


def solve_bounded(q, dom: SearchDomain, free_count: int | None = None, fixed: Sequence = ()) -> TriState:
    """Search the last ``free_count`` variables of ``q`` over the box of ``dom``.

    The leading ``q.arity - free_count`` variables take the values in ``fixed``.
    Non-membership is only claimed when the substituted polynomial is a
    nonzero constant.
    """
    if free_count is None:
        free_count = q.arity - len(fixed)
    if isinstance(q, Polynomial):
        n_fixed = q.arity - free_count
        if n_fixed >= 0 and len(fixed) == n_fixed:
            p = q.partial(dict(enumerate(fixed))) if n_fixed else q
            if p.is_constant() and not p.is_zero():
                return TriState("nonmember", None, dom.radius)
    for combo in _roots(q, dom, fixed, free_count, True):
        witness = _elements(q.ring, combo)
        full = [as_pair(v, q.ring) for v in fixed] + list(combo)
        if q.eval_pairs(full) != (0, 0):  # pragma: no cover - exact re-check
            raise AssertionError("witness failed re-verification")
        return TriState("member", witness, dom.radius)
    return TriState("unknown", None, dom.radius)


def all_roots(q, dom: SearchDomain, fixed: Sequence = ()) -> list[tuple[RingElement, ...]]:
    """Every root in the box, in scan order (only tractable for small boxes)."""
    free_count = q.arity - len(fixed)
    if isinstance(q, Polynomial):
        p = q.partial(dict(enumerate(fixed))) if fixed else q
        used = sorted(p.variables())
        if len(used) < free_count:
            # absent variables range over the whole box, so enumerate them too
            out = []
            values = dom.values()
            n_fixed = len(fixed)
            pinned = [i - n_fixed for i in used]
            roots = [r for r in _roots(q, dom, fixed, free_count, False)] if used else (
                [()] if p.is_zero() else []
            )
            for r in roots:
                fixed_part = {i: r[i] for i in pinned}
                free_positions = [i for i in range(free_count) if i not in fixed_part]
                for combo in itertools.product(values, repeat=len(free_positions)):
                    full = [None] * free_count
                    for i, v in fixed_part.items():
                        full[i] = v
                    for i, v in zip(free_positions, combo):
                        full[i] = v
                    out.append(_elements(q.ring, full))
            out.sort(key=lambda t: tuple(_order_key(dom, x) for x in t))
            return out
    return [_elements(q.ring, c) for c in _roots(q, dom, fixed, free_count, False)]


def _order_key(dom: SearchDomain, x: RingElement):
    return (x.a, x.b)


def membership(S, point: Sequence, witness_radius: int) -> TriState:
    """Bounded membership of ``point`` in the Diophantine set ``S``."""
    if len(point) != S.params:
        raise ArityMismatch(f"set has {S.params} parameters, got a point of length {len(point)}")
    if S.domain == "N":
        for v in point:
            if as_pair(v, S.ring)[0] < 0:
                return TriState("nonmember", None, witness_radius)
    dom = SearchDomain.for_set(S, witness_radius)
    return solve_bounded(S.q, dom, S.aux, list(point))


def parameter_points(S, param_radius: int) -> list[tuple[RingElement, ...]]:
    dom = SearchDomain.for_set(S, param_radius)
    return [_elements(S.ring, c) for c in itertools.product(dom.values(), repeat=S.params)]


def enumerate_members(S, witness_radius: int, param_radius: int) -> list[tuple[tuple[RingElement, ...], tuple[RingElement, ...]]]:
    """All parameter points whose membership resolves as member, sorted.

    Returns ``(point, witness)`` pairs.
    """
    out = []
    for pt in parameter_points(S, param_radius):
        res = membership(S, pt, witness_radius)
        if res.is_member:
            out.append((pt, res.witness))
    out.sort(key=lambda pw: tuple((x.a, x.b) for x in pw[0]))
    return out
