"""The algebra of Diophantine sets.

A :class:`DiophantineSet` with ``params = r`` and ``aux = m`` is the set of
``x`` for which some ``y`` makes ``q(x, y) = 0``; the first ``r`` variables of
``q`` are parameters and the last ``m`` are witnesses.

Every closure constructor combines defining equations with :func:`conjoin`.
A product of defining polynomials would describe a union (``pq = 0`` iff
``p = 0`` or ``q = 0`` in an integral domain), so conjunction uses
``p**2 + q**2`` over Z and the norm form ``p**2 - d' q**2`` over the
quadratic rings, where ``d'`` is a square-free integer different from ``d``.
"""

from __future__ import annotations

import contextlib
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import ArityMismatch, BadIndexSet, DomainError, RingMismatch
from .expr import PolyExpr
from .polynomial import Polynomial, as_pair
from .rings import ZZ, Ring, RingElement

__all__ = [
    "DiophantineSet",
    "IndexSet",
    "conjoin",
    "conjoin_all",
    "full_set",
    "empty_set",
    "set_singleton",
    "set_product",
    "set_intersect",
    "set_project",
    "proj_graph",
    "set_preimage",
    "set_compose",
    "graph_add",
    "graph_mul",
    "graph_identity",
    "graph_constant",
    "graph_of",
]

_FAULTS = {"conjoin_product": False}


@contextlib.contextmanager
def inject_fault(name: str):
    """Debug hook: temporarily break a construction (used by ``selfcheck``)."""
    if name not in _FAULTS:
        raise KeyError(name)
    _FAULTS[name] = True
    try:
        yield
    finally:
        _FAULTS[name] = False


def conjoin(p, q):
    """One polynomial vanishing exactly where both ``p`` and ``q`` vanish."""
    if p.ring != q.ring:
        raise RingMismatch(f"{p.ring} vs {q.ring}")
    if isinstance(p, Polynomial) and isinstance(q, Polynomial):
        n = max(p.arity, q.arity)
        p, q = p.with_arity(n), q.with_arity(n)
    if _FAULTS["conjoin_product"]:
        return p * q
    if p.ring.kind == "Z":
        return p * p + q * q
    return p * p - q * q * p.ring.conjoin_d


def conjoin_all(polys: Sequence, ring: Ring | None = None, arity: int = 0):
    """One polynomial for a whole system; the empty system gives zero.

    Over Z this is the flat sum of squares, whose degree stays twice the
    largest input degree.  The quadratic rings need the nested norm form
    ``((p1^2 - d' p2^2)^2 - d' p3^2)^2 ...``, a left fold of :func:`conjoin`.
    """
    polys = list(polys)
    if not polys:
        if ring is None:
            raise ValueError("empty conjunction needs a ring")
        return Polynomial.zero(ring, arity)
    if len(polys) == 1:
        return polys[0]
    if polys[0].ring.kind == "Z" and not _FAULTS["conjoin_product"]:
        if all(isinstance(p, Polynomial) for p in polys):
            n = max(p.arity for p in polys)
            polys = [p.with_arity(n) for p in polys]
        acc = polys[0] * polys[0]
        for p in polys[1:]:
            acc = acc + p * p
        return acc
    acc = polys[0]
    for p in polys[1:]:
        acc = conjoin(acc, p)
    return acc


@dataclass(frozen=True)
class IndexSet:
    """A strictly increasing list of 1-based positions in ``1..n``."""

    n: int
    S: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(self.S))
        if self.n < 0:
            raise BadIndexSet("n must be >= 0")
        if any(not 1 <= s <= self.n for s in self.S):
            raise BadIndexSet(f"{self.S} not inside 1..{self.n}")
        if any(a >= b for a, b in zip(self.S, self.S[1:])):
            raise BadIndexSet(f"{self.S} is not strictly increasing")

    def __len__(self):
        return len(self.S)

    def apply(self, point: Sequence):
        return tuple(point[s - 1] for s in self.S)


@dataclass(frozen=True, eq=False)
class DiophantineSet:
    ring: Ring
    params: int
    aux: int
    q: Polynomial | PolyExpr
    domain: str = "Z"
    parts: tuple = ()

    def __post_init__(self):
        if not self.parts:
            object.__setattr__(self, "parts", (self.q,))
        if self.params < 1:
            raise ArityMismatch("a set needs at least one parameter")
        if self.aux < 0:
            raise ArityMismatch("aux must be >= 0")
        if self.q.ring != self.ring:
            raise RingMismatch(f"{self.q.ring} vs {self.ring}")
        if self.q.arity != self.params + self.aux:
            raise ArityMismatch(f"q has arity {self.q.arity}, expected {self.params + self.aux}")
        if self.domain not in ("N", "Z"):
            raise DomainError(f"unknown domain {self.domain!r}")
        if self.domain == "N" and self.ring.kind != "Z":
            raise DomainError("the naturals domain needs ring Z")

    def contains(self, point: Sequence, witness_radius: int = 10):
        from .search import membership

        return membership(self, point, witness_radius)

    def to_json(self) -> dict:
        q = self.q
        if isinstance(q, PolyExpr):
            q = q.expand()
        return {
            "ring": self.ring.to_json(),
            "domain": self.domain,
            "params": self.params,
            "aux": self.aux,
            "q": q.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> DiophantineSet:
        q = Polynomial.from_json(obj["q"])
        return cls(Ring.from_json(obj["ring"]), int(obj["params"]), int(obj["aux"]), q, obj.get("domain", "Z"))

    def __repr__(self):
        return f"DiophantineSet({self.ring}, domain={self.domain}, params={self.params}, aux={self.aux})"


def _same_kind(*sets: DiophantineSet):
    ring, domain = sets[0].ring, sets[0].domain
    for s in sets[1:]:
        if s.ring != ring:
            raise RingMismatch(f"{ring} vs {s.ring}")
        if s.domain != domain:
            raise DomainError(f"domain {domain} vs {s.domain}")
    return ring, domain


def _var(ring: Ring, i: int, arity: int) -> Polynomial:
    return Polynomial.var(ring, i, arity)


def full_set(r: int, ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    """All of ``ring**r`` (or N**r), defined by the zero polynomial."""
    return DiophantineSet(ring, r, 0, Polynomial.zero(ring, r), domain)


def empty_set(r: int, ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    return DiophantineSet(ring, r, 0, Polynomial.const(ring, 1, r), domain)


def set_singleton(c: Sequence, ring: Ring | None = None, domain: str | None = None) -> DiophantineSet:
    """The single point ``c``, as the conjunction of ``x_k - c_k = 0``."""
    if not c:
        raise ArityMismatch("singleton needs a non-empty point")
    if ring is None:
        ring = next((v.ring for v in c if isinstance(v, RingElement)), ZZ)
    if domain is None:
        domain = "N" if ring.kind == "Z" and all(as_pair(v, ring)[0] >= 0 for v in c) else "Z"
    n = len(c)
    parts = [_var(ring, k, n) - Polynomial.const(ring, as_pair(v, ring), n) for k, v in enumerate(c)]
    return _make(ring, n, 0, parts, domain)


def _place(S: DiophantineSet, param_slots: Sequence[int], aux_slots: Sequence[int], arity: int) -> list:
    m = list(param_slots) + list(aux_slots)
    return [p.with_arity(S.q.arity).remap(m, arity) for p in S.parts]


def _make(ring, params, aux, parts, domain) -> DiophantineSet:
    """Set defined by the conjunction of ``parts`` (kept for later combination)."""
    parts = tuple(parts)
    q = conjoin_all(parts, ring, params + aux)
    if isinstance(q, Polynomial):
        q = q.with_arity(params + aux)
    return DiophantineSet(ring, params, aux, q, domain, parts or (q,))


def set_product(A: DiophantineSet, B: DiophantineSet) -> DiophantineSet:
    """``A x B``; variables laid out as ``[xA, xB, yA, yB]``."""
    ring, domain = _same_kind(A, B)
    r = A.params + B.params
    n = r + A.aux + B.aux
    qa = _place(A, range(A.params), range(r, r + A.aux), n)
    qb = _place(B, range(A.params, r), range(r + A.aux, n), n)
    return _make(ring, r, A.aux + B.aux, qa + qb, domain)


def set_intersect(A: DiophantineSet, B: DiophantineSet) -> DiophantineSet:
    """``A & B``; witness blocks kept disjoint as ``[x, yA, yB]``."""
    ring, domain = _same_kind(A, B)
    if A.params != B.params:
        raise ArityMismatch(f"{A.params} vs {B.params} parameters")
    r = A.params
    n = r + A.aux + B.aux
    qa = _place(A, range(r), range(r, r + A.aux), n)
    qb = _place(B, range(r), range(r + A.aux, n), n)
    return _make(ring, r, A.aux + B.aux, qa + qb, domain)


def set_project(A: DiophantineSet, keep: IndexSet) -> DiophantineSet:
    """Image of ``A`` under the coordinate projection onto ``keep``.

    Dropped parameters become extra witnesses: the defining polynomial is
    unchanged up to a permutation of its variables.
    """
    if keep.n != A.params:
        raise BadIndexSet(f"index set over {keep.n} coordinates, set has {A.params}")
    if not keep.S:
        raise BadIndexSet("projection onto zero coordinates is not a set of tuples")
    kept = [s - 1 for s in keep.S]
    dropped = [i for i in range(A.params) if i not in kept]
    order = kept + dropped
    mapping = [0] * A.params
    for pos, i in enumerate(order):
        mapping[i] = pos
    n = A.params + A.aux
    m = mapping + list(range(A.params, n))
    parts = tuple(p.with_arity(n).remap(m, n) for p in A.parts)
    return DiophantineSet(A.ring, len(kept), A.aux + len(dropped), A.q.remap(m, n), A.domain, parts)


def proj_graph(n: int, S: IndexSet, ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    """Graph ``{(x, pi_S(x))}`` of a coordinate projection; params ``n + |S|``."""
    if S.n != n:
        raise BadIndexSet(f"index set over {S.n} coordinates, expected {n}")
    if n < 1:
        raise BadIndexSet("n must be >= 1")
    arity = n + len(S)
    parts = [_var(ring, s - 1, arity) - _var(ring, n + k, arity) for k, s in enumerate(S.S)]
    return _make(ring, arity, 0, parts, domain)


def set_preimage(f: DiophantineSet, V: DiophantineSet) -> DiophantineSet:
    """``f^-1(V) = pi_{1..r}(f & (N^r x V))`` for a relation ``f`` of arity ``r + s``."""
    _same_kind(f, V)
    r = f.params - V.params
    if r < 1:
        raise ArityMismatch(f"relation has {f.params} slots, target has {V.params}")
    inside = set_intersect(f, set_product(full_set(r, f.ring, f.domain), V))
    return set_project(inside, IndexSet(f.params, tuple(range(1, r + 1))))


def set_compose(g: DiophantineSet, hs: Sequence[DiophantineSet]) -> DiophantineSet:
    """Relation of ``g(h_1, ..., h_n)``.

    Each ``h_i`` relates ``k`` inputs to one value; ``g`` relates ``n`` inputs
    to ``s`` values.  Working in the space ``(x_1..x_k, t_1..t_n, y_1..y_s)``:
    ``h_1 x N^(n-1+s)``, the preimage of each further ``h_i`` under the
    projection onto ``(x, t_i)``, and ``N^k x g`` are intersected, then the
    ``t`` block is projected away.
    """
    if not hs:
        raise ArityMismatch("need at least one inner function")
    _same_kind(g, *hs)
    n = len(hs)
    k = hs[0].params - 1
    if k < 1 or any(h.params != k + 1 for h in hs):
        raise ArityMismatch("every inner relation needs k inputs and one value")
    s = g.params - n
    if s < 1:
        raise ArityMismatch(f"outer relation has {g.params} slots for {n} inputs")
    ring, domain = g.ring, g.domain
    dim = k + n + s
    acc = set_product(hs[0], full_set(n - 1 + s, ring, domain)) if dim > k + 1 else hs[0]
    for i in range(1, n):
        S = IndexSet(dim, tuple(range(1, k + 1)) + (k + i + 1,))
        acc = set_intersect(acc, set_preimage(proj_graph(dim, S, ring, domain), hs[i]))
    acc = set_intersect(acc, set_product(full_set(k, ring, domain), g))
    keep = tuple(range(1, k + 1)) + tuple(range(k + n + 1, dim + 1))
    return set_project(acc, IndexSet(dim, keep))


def graph_add(ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    """``{(x, y, z) : x + y = z}``."""
    x, y, z = (_var(ring, i, 3) for i in range(3))
    return DiophantineSet(ring, 3, 0, x + y - z, domain)


def graph_mul(ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    """``{(x, y, z) : x * y = z}``."""
    x, y, z = (_var(ring, i, 3) for i in range(3))
    return DiophantineSet(ring, 3, 0, x * y - z, domain)


def graph_identity(ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    x, y = (_var(ring, i, 2) for i in range(2))
    return DiophantineSet(ring, 2, 0, x - y, domain)


def graph_constant(k: int, c: Sequence, ring: Ring = ZZ, domain: str = "N") -> DiophantineSet:
    """Constant function ``N^k -> {c}`` as the relation ``N^k x {c}``."""
    return set_product(full_set(k, ring, domain), set_singleton(c, ring, domain))


def graph_of(f: Polynomial, domain: str = "N") -> DiophantineSet:
    """``{(x, y) : y = f(x)}`` for a polynomial in ``f.arity`` inputs."""
    k = f.arity
    q = f.with_arity(k + 1) - _var(f.ring, k, k + 1)
    return DiophantineSet(f.ring, k + 1, 0, q, domain)
