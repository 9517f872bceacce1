"""Finite formal systems: the diagonal schema ``f = alpha . g . diag``,
representability, the Liar theorems, logical-system audits, and a toy
quoting language in which the diagonal lemma's fixed point is a literal
string.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import DomainError, ExhaustionBudgetExceeded, HypothesisFailure, MalformedTemplate
from .kernels.finite import diag_counts, liar_counts

__all__ = [
    "FiniteFunction2",
    "DiagonalCertificate",
    "diagonal_construct",
    "fixed_point_check",
    "FormalSystem",
    "LogicalSystem",
    "representable",
    "liar_check",
    "generalized_liar",
    "logical_system_audit",
    "quine_sentence",
    "QuineResult",
    "HOLE",
    "quote",
    "evaluate_term",
    "liar_exhaustive",
    "diagonal_exhaustive",
]


# -- diagonal schema -----------------------------------------------------------


@dataclass(frozen=True)
class FiniteFunction2:
    """``g: T x T -> Y`` as a total table."""

    T: tuple
    Y: tuple
    table: Mapping

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(self.T))
        object.__setattr__(self, "Y", tuple(self.Y))
        object.__setattr__(self, "table", dict(self.table))
        for s in self.T:
            for t in self.T:
                if (s, t) not in self.table:
                    raise DomainError(f"table misses ({s!r}, {t!r})")
                if self.table[(s, t)] not in self.Y:
                    raise DomainError(f"g({s!r}, {t!r}) is outside Y")

    def __call__(self, s, t):
        return self.table[(s, t)]

    def column(self, t) -> tuple:
        return tuple(self.table[(s, t)] for s in self.T)

    @classmethod
    def from_rows(cls, T: Sequence, Y: Sequence, rows: Sequence[Sequence]) -> FiniteFunction2:
        """``rows[i][j] = g(T[i], T[j])``."""
        return cls(T, Y, {(s, t): rows[i][j] for i, s in enumerate(T) for j, t in enumerate(T)})

    def to_json(self) -> dict:
        return {"T": list(self.T), "Y": list(self.Y), "rows": [[self(s, t) for t in self.T] for s in self.T]}

    @classmethod
    def from_json(cls, obj: dict) -> FiniteFunction2:
        return cls.from_rows(obj["T"], obj["Y"], obj["rows"])


@dataclass(frozen=True)
class DiagonalCertificate:
    fixed_points: tuple
    separations: dict  # column t -> a point s with f(s) != g(s, t), or None
    matched_columns: tuple

    @property
    def escapes_all(self) -> bool:
        return not self.matched_columns

    def to_json(self) -> dict:
        return {
            "fixed_points": list(self.fixed_points),
            "separations": [[t, s] for t, s in self.separations.items()],
            "matched_columns": list(self.matched_columns),
        }


def diagonal_construct(g: FiniteFunction2, alpha: Mapping) -> tuple[dict, DiagonalCertificate]:
    """``f(s) = alpha(g(s, s))`` and, per column, a point where ``f`` leaves it."""
    missing = [y for y in g.Y if y not in alpha]
    if missing:
        raise DomainError(f"alpha is undefined on {missing}")
    f = {s: alpha[g(s, s)] for s in g.T}
    fixed = tuple(y for y in g.Y if alpha[y] == y)
    seps, matched = {}, []
    for t in g.T:
        seps[t] = next((s for s in g.T if f[s] != g(s, t)), None)
        if seps[t] is None:
            matched.append(t)
    return f, DiagonalCertificate(fixed, seps, tuple(matched))


@dataclass(frozen=True)
class FixedPointReport:
    all_representable: bool
    non_representable: tuple | None  # values of some f on T that no column gives
    every_alpha_has_fixed_point: bool | None
    exhaustive: bool
    checked: int

    def to_json(self) -> dict:
        return {
            "all_representable": self.all_representable,
            "non_representable": None if self.non_representable is None else list(self.non_representable),
            "every_alpha_has_fixed_point": self.every_alpha_has_fixed_point,
            "exhaustive": self.exhaustive,
            "checked": self.checked,
        }


def fixed_point_check(g: FiniteFunction2, budget: int = 1 << 16, seed: int = 0) -> FixedPointReport:
    """If every ``f: T -> Y`` is a column of ``g``, every ``alpha: Y -> Y`` has a fixed point.

    All ``|Y|^|T|`` functions are tried when that fits the budget; otherwise
    ``budget`` random ones are, and an unrefuted sample raises
    :class:`ExhaustionBudgetExceeded`.
    """
    columns = {g.column(t) for t in g.T}
    total = len(g.Y) ** len(g.T)
    if total <= budget:
        candidates: Iterable = itertools.product(g.Y, repeat=len(g.T))
        exhaustive = True
    else:
        rng = random.Random(seed)
        candidates = (tuple(rng.choice(g.Y) for _ in g.T) for _ in range(budget))
        exhaustive = False
    checked = 0
    for f in candidates:
        checked += 1
        if f not in columns:
            return FixedPointReport(False, f, None, exhaustive, checked)
    if not exhaustive:
        raise ExhaustionBudgetExceeded(
            f"{budget} sampled functions out of {total} were all representable", budget / total
        )
    every = all(
        any(img[i] == y for i, y in enumerate(g.Y))
        for img in itertools.product(g.Y, repeat=len(g.Y))
    )
    return FixedPointReport(True, None, every, True, checked)


# -- formal systems ----------------------------------------------------------


@dataclass(frozen=True)
class FormalSystem:
    """``(E, S, F, N, g, s)``: expressions, sentences, formulas, names, naming and substitution."""

    E: tuple
    F: tuple
    S: tuple
    N: tuple
    naming: Mapping
    subst: Mapping

    def __post_init__(self):
        for attr in ("E", "F", "S", "N"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(self, "naming", dict(self.naming))
        object.__setattr__(self, "subst", dict(self.subst))
        if not self.S:
            raise DomainError("S must be nonempty")
        if not set(self.S) <= set(self.F) <= set(self.E):
            raise DomainError("need S within F within E")
        if set(self.F) & set(self.N):
            raise DomainError("formulas and names must be disjoint")
        if set(self.naming) != set(self.F):
            raise DomainError("naming must be defined on every formula")
        images = list(self.naming.values())
        if len(set(images)) != len(images):
            raise DomainError("naming is not injective")
        if not set(images) <= set(self.N):
            raise DomainError("naming must land in N")
        S = set(self.S)
        for phi in self.F:
            for n in self.N:
                if self.subst.get((phi, n)) not in S:
                    raise DomainError(f"subst({phi!r}, {n!r}) must be a sentence")

    def name_of(self, phi):
        return self.naming[phi]

    def formula_named(self, n):
        """``g^-1(n)``, or None when ``n`` names nothing."""
        for phi, m in self.naming.items():
            if m == n:
                return phi
        return None

    def apply(self, phi, n):
        """``phi[n]``."""
        return self.subst[(phi, n)]

    def to_json(self) -> dict:
        return {
            "E": list(self.E),
            "F": list(self.F),
            "S": list(self.S),
            "N": list(self.N),
            "naming": [[phi, n] for phi, n in self.naming.items()],
            "subst": [[phi, n, v] for (phi, n), v in self.subst.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FormalSystem:
        return cls(
            obj["E"],
            obj["F"],
            obj["S"],
            obj["N"],
            {phi: n for phi, n in obj["naming"]},
            {(phi, n): v for phi, n, v in obj["subst"]},
        )


def representable(sys: FormalSystem, A: Iterable, X: Iterable):
    """First formula ``phi`` (in F's order) with ``phi[n] in A  <=>  n in X`` for all n."""
    A, X = set(A), set(X)
    for phi in sys.F:
        if all((sys.apply(phi, n) in A) == (n in X) for n in sys.N):
            return phi
    return None


def anti_diagonal(sys: FormalSystem, T: Iterable) -> frozenset:
    """Names ``n`` with ``g^-1(n)[n]`` outside T; names of nothing are left out."""
    T = set(T)
    out = set()
    for n in sys.N:
        phi = sys.formula_named(n)
        if phi is not None and sys.apply(phi, n) not in T:
            out.add(n)
    return frozenset(out)


@dataclass(frozen=True)
class LiarVerdict:
    holds: bool
    anti_diagonal: frozenset
    counterexample: object = None

    def to_json(self) -> dict:
        return {"holds": self.holds, "anti_diagonal": sorted(self.anti_diagonal, key=repr), "counterexample": self.counterexample}


def liar_check(sys: FormalSystem, T: Iterable) -> LiarVerdict:
    """The anti-diagonal set is not T-representable; ``holds`` confirms it here."""
    T = set(T)
    if not T <= set(sys.S):
        raise DomainError("T must be a set of sentences")
    X = anti_diagonal(sys, T)
    phi = representable(sys, T, X)
    return LiarVerdict(phi is None, X, phi)


@dataclass(frozen=True)
class LiarSentence:
    sentence: object
    pi: object
    in_B: bool
    in_A: bool

    @property
    def verified(self) -> bool:
        return self.in_B != self.in_A


def generalized_liar(sys: FormalSystem, A: Iterable, B: Iterable) -> LiarSentence:
    """``lambda = pi[g(pi)]`` with ``lambda in B  <=>  lambda not in A``.

    Hypotheses are checked constructively: the complement of the names of A
    must be B-representable, and some ``pi`` must B-represent
    ``{n : g^-1(n)[n] not in A}``.
    """
    A, B = set(A), set(B)
    if not A <= set(sys.F):
        raise DomainError("A must be a set of formulas")
    if not B <= set(sys.S):
        raise DomainError("B must be a set of sentences")
    names_A = {sys.name_of(phi) for phi in A}
    not_A = [n for n in sys.N if n not in names_A]
    if representable(sys, B, not_A) is None:
        raise HypothesisFailure("complement-representable", {"complement": not_A})
    target = [n for n in sys.N if (phi := sys.formula_named(n)) is not None and sys.apply(phi, n) not in A]
    pi = representable(sys, B, target)
    if pi is None:
        raise HypothesisFailure("self-reference", {"unrepresented": target})
    lam = sys.apply(pi, sys.name_of(pi))
    out = LiarSentence(lam, pi, lam in B, lam in A)
    if not out.verified:  # pragma: no cover - follows from the construction
        raise AssertionError("liar sentence failed verification")
    return out


@dataclass(frozen=True)
class LogicalSystem:
    """A formal system with provable ``P``, true ``T`` and negation ``neg``."""

    base: FormalSystem
    P: frozenset
    T: frozenset
    neg: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "P", frozenset(self.P))
        object.__setattr__(self, "T", frozenset(self.T))
        object.__setattr__(self, "neg", dict(self.neg))
        sys = self.base
        S = set(sys.S)
        if not (self.P <= S and self.T <= S):
            raise DomainError("P and T must be sets of sentences")
        if set(self.neg) != set(sys.F) or not set(self.neg.values()) <= set(sys.F):
            raise DomainError("negation must map F into F")
        for phi in sys.F:
            nphi = self.neg[phi]
            if (phi in S) != (nphi in S):
                raise DomainError(f"{phi!r} and its negation disagree on being sentences")
            if phi in S and (phi in self.T) == (nphi in self.T):
                raise DomainError(f"exactly one of {phi!r} and its negation must be true")
            for n in sys.N:
                if (sys.apply(phi, n) in self.T) == (sys.apply(nphi, n) in self.T):
                    raise DomainError(f"negation does not commute with substitution at ({phi!r}, {n!r})")


@dataclass(frozen=True)
class AuditReport:
    consistent: bool
    complete: bool
    sound: bool

    def to_json(self) -> dict:
        return {"consistent": self.consistent, "complete": self.complete, "sound": self.sound}


def logical_system_audit(L: LogicalSystem) -> AuditReport:
    neg_P = {L.neg[phi] for phi in L.P}
    return AuditReport(
        consistent=not (L.P & neg_P),
        complete=(L.P | neg_P) == set(L.base.S),
        sound=L.P <= L.T,
    )


# -- quoting language ------------------------------------------------------------
# quote(x) = "⟦x⟧".  The diagonaliser term "D⟦x⟧" evaluates to the quotation of
# x with its hole filled by x's own quotation: D[a(x)] = [a([a(x)])].

HOLE = "⟨hole⟩"
OPEN, CLOSE = "⟦", "⟧"


def quote(x: str) -> str:
    return OPEN + x + CLOSE


def evaluate_term(term: str) -> str:
    """Value of a diagonaliser term ``D⟦x⟧``: the quotation ``⟦x[hole := ⟦x⟧]⟧``."""
    if not (term.startswith("D" + OPEN) and term.endswith(CLOSE)):
        raise MalformedTemplate(f"not a diagonaliser term: {term!r}")
    body = term[2:-1]
    if body.count(HOLE) != 1:
        raise MalformedTemplate("the quoted formula must have exactly one hole")
    return quote(body.replace(HOLE, quote(body)))


@dataclass(frozen=True)
class QuineResult:
    template: str
    sentence: str  # sigma
    term: str  # a closed term whose value is quote(sigma)
    formula: str  # g(x) = template(D(x))

    def check(self) -> bool:
        return self.sentence == self.template.replace(HOLE, self.term) and evaluate_term(self.term) == quote(self.sentence)

    def to_json(self) -> dict:
        return {"template": self.template, "sentence": self.sentence, "term": self.term, "verified": self.check()}


def quine_sentence(template: str) -> QuineResult:
    """``sigma = g([g])`` with ``g = template(D(x))``.

    Then ``sigma`` is the template applied to a term that evaluates to
    ``sigma``'s own quotation, checked by exact string equality.
    """
    if template.count(HOLE) != 1:
        raise MalformedTemplate(f"template needs exactly one {HOLE}, found {template.count(HOLE)}")
    if OPEN in template or CLOSE in template:
        raise MalformedTemplate("quotation marks are reserved")
    g = template.replace(HOLE, "D" + HOLE)
    term = "D" + quote(g)
    sigma = g.replace(HOLE, quote(g))
    out = QuineResult(template, sigma, term, g)
    if not out.check():  # pragma: no cover - string identity
        raise AssertionError("quine construction failed its self-check")
    return out


# -- exhaustive runs -----------------------------------------------------------


def liar_exhaustive(max_f: int = 3, max_n: int = 3) -> dict:
    """Every system with ``|F| <= max_f``, ``|F| <= |N| <= max_n`` and ``S`` the first ``|S|`` formulas."""
    cases = bad = 0
    shapes = []
    for f in range(1, max_f + 1):
        for s in range(1, f + 1):
            for n in range(f, max_n + 1):
                c, b = liar_counts(f, s, n)
                shapes.append({"F": f, "S": s, "N": n, "cases": c, "counterexamples": b})
                cases += c
                bad += b
    return {"cases": cases, "counterexamples": bad, "shapes": shapes}


def diagonal_exhaustive(max_t: int = 3, max_y: int = 3) -> dict:
    cases = bad = 0
    shapes = []
    for t in range(1, max_t + 1):
        for y in range(1, max_y + 1):
            c, b = diag_counts(t, y)
            shapes.append({"T": t, "Y": y, "cases": c, "counterexamples": b})
            cases += c
            bad += b
    return {"cases": cases, "counterexamples": bad, "shapes": shapes}
