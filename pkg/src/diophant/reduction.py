"""The two headline reductions.

* The naturals are Diophantine in ``Z[sqrt d]``: the five-equation system
  ``Sigma`` in ``t, x, y, u, v, z, w, h, q, r, s`` forces ``t`` to be a square
  natural, and four copies plus ``t = k1^2 + ... + k4^2`` give every natural.
* The rational integers are Diophantine in ``Z[i]`` through seven equations
  built on ``alpha(n+1) = 4 alpha(n) - alpha(n-1)``.

Each side has a witness constructor, an exact verifier and structured box
scans.  Box scans are evidence only: "no root within radius R".
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, fields

from .dioset import conjoin, conjoin_all
from .errors import DomainError, InternalInconsistency
from .expr import PolyExpr
from .numtheory import (
    alpha,
    coprime_offset,
    ext_gcd,
    find_odd_index,
    four_squares,
    pell_fundamental,
    pell_sequence,
)
from .polynomial import Polynomial
from .rings import GAUSS, Ring, RingElement, is_squarefree, quad
from .search import SearchDomain, all_roots

__all__ = [
    "SIGMA_VARS",
    "SigmaWitness",
    "build_sigma",
    "sigma_witness",
    "sigma_conjunction",
    "nat_definition",
    "nat_witness",
    "nat_membership_scan",
    "sigma_box_scan",
    "Reduction",
    "reduce_equation_quad",
    "GAUSS_VARS",
    "GaussWitness",
    "gauss_witness",
    "gauss_verify",
    "alpha_equation_solutions",
    "alpha_families",
]

SIGMA_VARS = ("t", "x", "y", "u", "v", "z", "w", "h", "q", "r", "s")
# bound variables of one copy inside the nat definition: k, then Sigma minus t
COPY_WIDTH = 11
N_COPIES = 4


def _ring_for(d: int) -> Ring:
    if d < 2 or not is_squarefree(d):
        raise DomainError(f"d = {d} must be square-free and >= 2")
    return quad(d)


def pell_e(d: int) -> int:
    """``e = a^2 - 1`` for the fundamental solution ``(a, b)`` of ``a^2 - d b^2 = 1``."""
    a, _ = pell_fundamental(d)
    return a * a - 1


def build_sigma(d: int) -> list[Polynomial]:
    R = _ring_for(d)
    e = pell_e(d)
    t, x, y, u, v, z, w, h, q, r, s = (Polynomial.var(R, i, 11) for i in range(11))
    return [
        x * x - y * y * e - 1,
        u * u - v * v * e - 1,
        v * v - y * y * t - z * y**4,
        t - w * w,
        y * y - t - 1 - h * h - q * q - r * r - s * s,
    ]


@dataclass(frozen=True)
class SigmaWitness:
    d: int
    t: RingElement
    x: RingElement
    y: RingElement
    u: RingElement
    v: RingElement
    z: RingElement
    w: RingElement
    h: RingElement
    q: RingElement
    r: RingElement
    s: RingElement

    def values(self) -> tuple[RingElement, ...]:
        return tuple(getattr(self, n) for n in SIGMA_VARS)

    def residuals(self) -> list[RingElement]:
        vals = self.values()
        return [p.evaluate(vals) for p in build_sigma(self.d)]

    def holds(self) -> bool:
        return all(r == 0 for r in self.residuals())

    def conj(self) -> SigmaWitness:
        return SigmaWitness(self.d, *(v.conj() for v in self.values()))

    def to_json(self) -> dict:
        out = {"d": self.d}
        out.update({n: getattr(self, n).to_json() for n in SIGMA_VARS})
        return out


def sigma_witness(d: int, k: int) -> SigmaWitness:
    """A solution of Sigma with ``t = k^2``, verified exactly."""
    R = _ring_for(d)
    if k < 0:
        raise DomainError("k must be >= 0")
    a, _ = pell_fundamental(d)
    n = 1
    while pell_sequence(a, n).y <= k:
        n += 1
    xn, yn = pell_sequence(a, n).x, pell_sequence(a, n).y
    pk = pell_sequence(a, n * k)
    t = k * k
    num = pk.y**2 - yn * yn * t
    if num % yn**4:
        raise InternalInconsistency(f"y_n^4 does not divide v^2 - y^2 t for d={d}, k={k}")
    z = num // yn**4
    h, q, r, s = four_squares(yn * yn - t - 1)
    wit = SigmaWitness(d, *(R(c) for c in (t, xn, yn, pk.x, pk.y, z, k, h, q, r, s)))
    if not wit.holds():
        raise InternalInconsistency(f"Sigma witness for d={d}, k={k} fails: {wit.residuals()}")
    return wit


def sigma_conjunction(d: int) -> PolyExpr:
    """Nested norm form of the five Sigma equations (degree 48, kept unexpanded)."""
    R = _ring_for(d)
    return conjoin_all([PolyExpr.leaf(p) for p in build_sigma(d)], R)


def nat_definition(d: int) -> PolyExpr:
    """``Q(t, bound...)`` whose roots have ``t`` exactly the naturals.

    Variable 0 is ``t``; copy ``j`` occupies ``1 + 11 j ..``, holding ``k_j``
    and then ``x, y, u, v, z, w, h, q, r, s`` of a Sigma system whose ``t``
    is replaced by ``k_j^2``.
    """
    R = _ring_for(d)
    arity = 1 + N_COPIES * COPY_WIDTH
    P = sigma_conjunction(d)
    var = [PolyExpr.leaf(Polynomial.var(R, i, arity)) for i in range(arity)]
    copies = []
    ks = []
    for j in range(N_COPIES):
        base = 1 + COPY_WIDTH * j
        k = var[base]
        ks.append(k)
        copies.append(PolyExpr.compose(P, [k * k] + var[base + 1 : base + COPY_WIDTH]))
    Q1 = conjoin_all(copies, R)
    Q2 = var[0] - ks[0] * ks[0] - ks[1] * ks[1] - ks[2] * ks[2] - ks[3] * ks[3]
    return conjoin(Q1, Q2)


def nat_witness(d: int, n: int) -> list[RingElement]:
    """A full root ``(t, bound...)`` of :func:`nat_definition` with ``t = n``."""
    R = _ring_for(d)
    if n < 0:
        raise DomainError("n must be a natural number")
    out = [R(n)]
    for k in four_squares(n):
        w = sigma_witness(d, k)
        out.append(R(k))
        out.extend(w.values()[1:])
    return out


# -- box scans ---------------------------------------------------------------


def _box(R: Ring, radius: int) -> list[RingElement]:
    return [R(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]


def _in_box(x: RingElement, radius: int) -> bool:
    return abs(x.a) <= radius and abs(x.b) <= radius


def _two_square_table(box: list[RingElement]) -> dict[RingElement, list[tuple[RingElement, RingElement]]]:
    table: dict = defaultdict(list)
    for a in box:
        for b in box:
            table[a * a + b * b].append((a, b))
    return table


@dataclass(frozen=True)
class SigmaScanResult:
    """Solutions of Sigma in a box, grouped by ``(t, x, y, u, v, z, w)``.

    ``completions`` counts the ``(h, q, r, s)`` in the box finishing each
    group; ``examples`` holds one full verified solution per group.
    """

    d: int
    radius: int
    examples: tuple[SigmaWitness, ...]
    completions: tuple[int, ...]

    @property
    def t_values(self) -> list[RingElement]:
        return sorted({w.t for w in self.examples}, key=lambda e: (e.a, e.b))

    @property
    def total(self) -> int:
        return sum(self.completions)


def sigma_box_scan(d: int, radius: int, t: RingElement | None = None) -> SigmaScanResult:
    """Every solution of Sigma with all eleven unknowns in the box.

    Complete for the box: equations 1 and 2 are solved by pair scans, ``t``
    comes from ``w`` (equation 4), ``z`` from exact division in equation 3,
    and equation 5 by a meet-in-the-middle over sums of two squares.
    """
    R = _ring_for(d)
    e = pell_e(d)
    box = _box(R, radius)
    pell = [(x, y) for x in box for y in box if x * x - y * y * e == 1]
    if t is None:
        tw = [(w * w, w) for w in box if _in_box(w * w, radius)]
    else:
        tw = [(t, w) for w in box if w * w == t]
    sums = _two_square_table(box)
    examples, counts = [], []
    for x, y in pell:
        y2 = y * y
        y4 = y2 * y2
        for tt, w in tw:
            target = y2 - tt - 1
            hits = []
            for s1, pairs in sums.items():
                rest = sums.get(target - s1)
                if rest:
                    hits.append((pairs, rest))
            if not hits:
                continue
            n_tail = sum(len(p1) * len(p2) for p1, p2 in hits)
            h, q = hits[0][0][0]
            r, s = hits[0][1][0]
            for u, v in pell:
                num = v * v - y2 * tt
                if y4 == 0:
                    zs = box if num == 0 else []
                else:
                    z = y4.exact_div(num)
                    zs = [z] if z is not None and _in_box(z, radius) else []
                for z in zs:
                    wit = SigmaWitness(d, tt, x, y, u, v, z, w, h, q, r, s)
                    if not wit.holds():
                        raise InternalInconsistency(f"box-scan solution fails Sigma: {wit}")
                    examples.append(wit)
                    counts.append(n_tail)
    return SigmaScanResult(d, radius, tuple(examples), tuple(counts))


@dataclass(frozen=True)
class NatScanResult:
    """Bounded search for a root of the nat definition at a given ``t``."""

    t: RingElement
    radius: int
    k_tuples: tuple[tuple[RingElement, ...], ...]
    root: tuple[RingElement, ...] | None

    @property
    def found(self) -> bool:
        return self.root is not None


def nat_membership_scan(d: int, t, radius: int, max_tuples: int = 64) -> NatScanResult:
    """Search the nat definition at fixed ``t`` with every bound variable in the box.

    A root of ``Q = Q1^2 - d' Q2^2`` is exactly a simultaneous root of ``Q2``
    and of all four Sigma copies, so the scan first finds the ``k``-tuples
    with ``k1^2 + ... + k4^2 = t`` and then solves each copy at
    ``t_j = k_j^2``.  Any root found is re-checked on ``Q`` itself.
    """
    R = _ring_for(d)
    t = t if isinstance(t, RingElement) else R(*t) if isinstance(t, tuple) else R(t)
    box = _box(R, radius)
    sums = _two_square_table(box)
    tuples = []
    for s1 in sorted(sums, key=lambda e: (e.a, e.b)):
        rest = sums.get(t - s1)
        if not rest:
            continue
        for k1, k2 in sums[s1]:
            for k3, k4 in rest:
                tuples.append((k1, k2, k3, k4))
                if len(tuples) >= max_tuples:
                    break
    root = None
    cache: dict = {}
    for ks in tuples:
        copies = []
        for k in ks:
            key = k * k
            if key not in cache:
                cache[key] = sigma_box_scan(d, radius, key).examples
            if not cache[key]:
                break
            copies.append((k, cache[key][0]))
        if len(copies) == N_COPIES:
            root = [t]
            for k, w in copies:
                root.append(k)
                root.extend(w.values()[1:])
            break
    if root is not None and nat_definition(d).evaluate(root) != 0:
        raise InternalInconsistency("assembled root does not vanish on the nat definition")
    return NatScanResult(t, radius, tuple(tuples), tuple(root) if root else None)


# -- reduction of an equation over Z ----------------------------------------


@dataclass(frozen=True)
class Reduction:
    """``R = conjoin(P(a), Q(a_1, X_1), ..., Q(a_n, X_n))`` over ``Z[sqrt d]``.

    Variables: ``a_1..a_n`` first, then one 44-variable block per parameter.
    """

    d: int
    source: Polynomial
    R: PolyExpr

    @property
    def n(self) -> int:
        return self.source.arity

    @property
    def block(self) -> int:
        return N_COPIES * COPY_WIDTH

    def witness(self, a: Sequence[int]) -> list[RingElement]:
        """Assemble a root of ``R`` from a natural solution ``a`` of the source."""
        if len(a) != self.n:
            raise DomainError(f"need {self.n} values")
        if any(v < 0 for v in a):
            raise DomainError("values must be natural")
        if self.source.evaluate(list(a)) != 0:
            raise DomainError(f"{list(a)} does not solve the source equation")
        ring = self.R.ring
        out = [ring(v) for v in a]
        for v in a:
            out.extend(nat_witness(self.d, v)[1:])
        if self.R.evaluate(out) != 0:
            raise InternalInconsistency("assembled witness does not vanish on R")
        return out

    def box_scan(self, radius: int) -> dict:
        """Bounded evidence about roots of ``R`` with every variable in the box.

        Roots of ``R`` are the ``a`` solving the embedded source whose
        coordinates each pass :func:`nat_membership_scan`.
        """
        ring = self.R.ring
        emb = _embed(self.source, ring)
        dom = SearchDomain(ring, "ring", radius)
        cands = all_roots(emb, dom)
        report = {"radius": radius, "source_roots": [[c.to_json() for c in r] for r in cands], "root": None}
        for a in cands:
            scans = [nat_membership_scan(self.d, v, radius) for v in a]
            if all(s.found for s in scans):
                root = list(a)
                for s in scans:
                    root.extend(s.root[1:])
                if self.R.evaluate(root) != 0:
                    raise InternalInconsistency("box-scan root does not vanish on R")
                report["root"] = [c.to_json() for c in root]
                break
        return report


def _embed(P: Polynomial, ring: Ring) -> Polynomial:
    return Polynomial(ring, P.arity, {e: (c.a, 0) for c, e in P.terms})


def reduce_equation_quad(P: Polynomial, d: int) -> Reduction:
    if P.ring.kind != "Z":
        raise DomainError("the source equation must have rational integer coefficients")
    ring = _ring_for(d)
    n = P.arity
    if n < 1:
        raise DomainError("the source equation needs at least one variable")
    Q = nat_definition(d)
    width = N_COPIES * COPY_WIDTH
    arity = n + n * width
    var = [PolyExpr.leaf(Polynomial.var(ring, i, arity)) for i in range(arity)]
    parts = [PolyExpr.leaf(_embed(P, ring).with_arity(arity))]
    for i in range(n):
        base = n + i * width
        parts.append(PolyExpr.compose(Q, [var[i]] + var[base : base + width]))
    return Reduction(d, P, conjoin_all(parts, ring))


# -- Gaussian integers ---------------------------------------------------------

GAUSS_VARS = ("a", "p", "r", "x", "t", "s", "w", "q", "z", "y", "v", "u")


@dataclass(frozen=True)
class GaussWitness:
    a: RingElement
    p: RingElement
    r: RingElement
    x: RingElement
    t: RingElement
    s: RingElement
    w: RingElement
    q: RingElement
    z: RingElement
    y: RingElement
    v: RingElement
    u: RingElement

    @classmethod
    def of(cls, **values) -> GaussWitness:
        return cls(**{k: _gauss(values[k]) for k in GAUSS_VARS})

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in GAUSS_VARS}

    @classmethod
    def from_json(cls, obj: dict) -> GaussWitness:
        missing = [k for k in GAUSS_VARS if k not in obj]
        if missing:
            raise DomainError(f"witness lacks fields {missing}")
        return cls(**{k: GAUSS(*obj[k]) for k in GAUSS_VARS})

    def replace(self, **changes) -> GaussWitness:
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        vals.update({k: _gauss(v) for k, v in changes.items()})
        return GaussWitness(**vals)


def _gauss(v) -> RingElement:
    if isinstance(v, RingElement):
        return v
    if isinstance(v, (tuple, list)):
        return GAUSS(*v)
    return GAUSS(v)


@dataclass(frozen=True)
class GaussReport:
    holds: bool
    residuals: tuple[RingElement, ...]  # left side minus right side, per equation

    @property
    def failed(self) -> list[int]:
        return [i + 1 for i, r in enumerate(self.residuals) if r != 0]

    def to_json(self) -> dict:
        return {"holds": self.holds, "failed": self.failed, "residuals": [r.to_json() for r in self.residuals]}


def gauss_verify(w: GaussWitness) -> GaussReport:
    """Evaluate the seven equations exactly; the last two have right side 1."""
    a, p, r, x, t, s, ww, q, z, y, v, u = (getattr(w, k) for k in GAUSS_VARS)
    res = (
        2 * a + 1 - p,
        r * x + t * (8 * s + 3) - 1,
        x - 4 * (3 * p * p + 1) * ww,
        p - (q + z * y),
        v - q * y,
        u * u - 4 * u * v + v * v - 1,
        x * x - 4 * x * y + y * y - 1,
    )
    return GaussReport(all(e == 0 for e in res), res)


def gauss_witness(a: int) -> GaussWitness:
    """Integer solution of the seven equations for the rational integer ``a``."""
    if isinstance(a, RingElement):
        if not a.is_rational():
            raise DomainError("the constructive direction needs a rational integer")
        a = a.a
    p = 2 * a + 1
    m = 4 * (3 * p * p + 1)
    n = find_odd_index(p)
    x, y = alpha(n - 1), alpha(n)
    u, v = alpha(p * n + 1), alpha(p * n)
    if x % m or v % y:
        raise InternalInconsistency(f"divisibility failed for a={a}")
    w, q = x // m, v // y
    if (p - q) % y:
        raise InternalInconsistency(f"q is not congruent to p modulo y for a={a}")
    z = (p - q) // y
    s = coprime_offset(x)
    _, r, t = ext_gcd(x, 8 * s + 3)
    wit = GaussWitness.of(a=a, p=p, r=r, x=x, t=t, s=s, w=w, q=q, z=z, y=y, v=v, u=u)
    report = gauss_verify(wit)
    if not report.holds:
        raise InternalInconsistency(f"Gaussian witness for a={a} fails equations {report.failed}")
    return wit


def alpha_families(bound: int) -> set[tuple[int, int]]:
    """The pairs ``(alpha(n+1), alpha(n))``, swapped, and both negated, with entries within ``bound``."""
    out = set()
    n = 0
    while abs(alpha(n)) <= bound:
        hi, lo = alpha(n + 1), alpha(n)
        for pr in ((hi, lo), (lo, hi), (-hi, -lo), (-lo, -hi)):
            if abs(pr[0]) <= bound and abs(pr[1]) <= bound:
                out.add(pr)
        n += 1
    return out


@dataclass(frozen=True)
class AlphaSolutions:
    bound: int
    solutions: tuple[tuple[RingElement, RingElement], ...]
    all_real: bool
    in_families: bool
    families_covered: bool


def alpha_equation_solutions(bound: int) -> AlphaSolutions:
    """All Gaussian ``(x, y)`` in the box with ``x^2 - 4xy + y^2 = 1``."""
    if bound < 1:
        raise DomainError("bound must be >= 1")
    x, y = Polynomial.var(GAUSS, 0, 2), Polynomial.var(GAUSS, 1, 2)
    eq = x * x - x * y * 4 + y * y - 1
    sols = [tuple(r) for r in all_roots(eq, SearchDomain(GAUSS, "ring", bound))]
    real = all(e.b == 0 for s in sols for e in s)
    fam = alpha_families(bound)
    got = {(s[0].a, s[1].a) for s in sols if s[0].b == 0 and s[1].b == 0}
    return AlphaSolutions(bound, tuple(sols), real, got <= fam, fam <= got)

