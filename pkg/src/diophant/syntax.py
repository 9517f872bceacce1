"""Text front end: polynomial expressions, positive-existential formulas, and
the compiler from formulas to Diophantine sets.

Expression grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' nat)?
    atom   := nat | 'x' nat | 'sqrtd' | 'i' | name | '(' expr ')'

Formula grammar (``or``, ``not`` and ``forall`` parse but do not compile)::

    formula := conj ('or' conj)*
    conj    := unit ('and' unit)*
    unit    := ('exists' | 'forall') name '(' formula ')'
             | 'not' unit | '(' formula ')' | expr '=' expr

Free variables are ``x0, x1, ...``.  Each quantifier introduces a fresh
variable numbered after all free ones, so bound names never clash.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass, field

from .dioset import DiophantineSet, IndexSet, set_intersect, set_project
from .errors import ParseError, RingLiteralError, UnknownVariable, UnsupportedConnective
from .polynomial import Polynomial
from .rings import ZZ, Ring

__all__ = [
    "parse_polynomial",
    "format_polynomial",
    "parse_formula",
    "format_formula",
    "compile_formula",
    "holds_bounded",
    "Atom",
    "And",
    "Or",
    "Not",
    "Exists",
    "Forall",
    "ParsedFormula",
]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_KEYWORDS = {"exists", "forall", "and", "or", "not"}
_FREE = re.compile(r"x(\d+)$")


@dataclass(frozen=True)
class Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[Tok]:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        # account for newlines skipped as whitespace
        skipped = text[pos : m.start(m.lastindex)] if m.lastindex else text[pos:]
        for ch_i, ch in enumerate(skipped):
            if ch == "\n":
                line += 1
                line_start = pos + ch_i + 1
        start = m.start(m.lastindex)
        col = start - line_start + 1
        num, name, op = m.groups()
        if num is not None:
            toks.append(Tok("num", num, line, col))
        elif name is not None:
            toks.append(Tok("name", name, line, col))
        elif op is not None:
            if op not in "+-*^()=":
                raise ParseError(f"unexpected character {op!r}", line, col)
            toks.append(Tok("op", op, line, col))
        pos = m.end()
    tail = len(text) - line_start + 1
    toks.append(Tok("end", "", line, tail))
    return toks


# -- expression trees (resolved to polynomials after parsing) -----------------
# ("num", n) ("var", key) ("unit",) ("add", a, b) ("sub", a, b) ("mul", a, b)
# ("neg", a) ("pow", a, k); key is ("free", k) or ("bound", id)


class _Parser:
    def __init__(self, text: str, ring: Ring, allow_formulas: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.allow_formulas = allow_formulas
        self.scopes: list[dict[str, int]] = []
        self.n_bound = 0
        self.max_free = -1

    # helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Tok | None = None, cls=ParseError):
        tok = tok or self.tok
        return cls(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        t = self.tok
        if t.kind in ("op", "name") and t.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")

    # expressions
    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = "add" if self.tok.text == "+" else "sub"
            self.i += 1
            node = (op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.accept("*"):
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.accept("^"):
            t = self.tok
            if t.kind != "num":
                raise self.error("exponent must be a natural number")
            self.i += 1
            node = ("pow", node, int(t.text))
        return node

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return ("num", int(t.text))
        if t.kind == "op" and t.text == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            name = t.text
            if name == "sqrtd":
                if self.ring.kind != "quad":
                    raise self.error(f"'sqrtd' is not an element of {self.ring}", t, RingLiteralError)
                self.i += 1
                return ("unit",)
            if name == "i":
                if self.ring.kind != "gauss":
                    raise self.error(f"'i' is not an element of {self.ring}", t, RingLiteralError)
                self.i += 1
                return ("unit",)
            if name in _KEYWORDS:
                raise self.error(f"unexpected keyword {name!r}")
            for scope in reversed(self.scopes):
                if name in scope:
                    self.i += 1
                    return ("var", ("bound", scope[name]))
            m = _FREE.match(name)
            if m:
                self.i += 1
                k = int(m.group(1))
                self.max_free = max(self.max_free, k)
                return ("var", ("free", k))
            raise self.error(f"unknown variable {name!r}", t, UnknownVariable)
        shown = t.text or "end of input"
        raise self.error(f"unexpected {shown!r}")

    # formulas
    def formula(self):
        node = self.conj()
        while self.accept("or"):
            node = ("or", node, self.conj())
        return node

    def conj(self):
        node = self.unit()
        while self.accept("and"):
            node = ("and", node, self.unit())
        return node

    def unit(self):
        t = self.tok
        if t.kind == "name" and t.text in ("exists", "forall"):
            self.i += 1
            v = self.tok
            if v.kind != "name" or v.text in _KEYWORDS or v.text in ("sqrtd", "i"):
                raise self.error("expected a variable name after quantifier")
            self.i += 1
            bid = self.n_bound
            self.n_bound += 1
            self.scopes.append({v.text: bid})
            self.expect("(")
            body = self.formula()
            self.expect(")")
            self.scopes.pop()
            return (t.text, bid, v.text, body)
        if t.kind == "name" and t.text == "not":
            self.i += 1
            return ("not", self.unit())
        if t.kind == "op" and t.text == "(":
            save = self.i
            saved_bound, saved_free = self.n_bound, self.max_free
            try:
                self.i += 1
                node = self.formula()
                self.expect(")")
                if self.tok.kind == "op" and self.tok.text == "=":
                    raise self.error("parenthesised expression")
                return node
            except ParseError:
                self.i = save
                self.n_bound, self.max_free = saved_bound, saved_free
        lhs = self.expr()
        self.expect("=")
        rhs = self.expr()
        return ("atom", lhs, rhs)


def _to_poly(node, ring: Ring, arity: int, index) -> Polynomial:
    op = node[0]
    if op == "num":
        return Polynomial.const(ring, node[1], arity)
    if op == "unit":
        return Polynomial.const(ring, (0, 1), arity)
    if op == "var":
        return Polynomial.var(ring, index(node[1]), arity)
    if op == "neg":
        return -_to_poly(node[1], ring, arity, index)
    if op == "pow":
        return _to_poly(node[1], ring, arity, index) ** node[2]
    a = _to_poly(node[1], ring, arity, index)
    b = _to_poly(node[2], ring, arity, index)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    return a * b


def parse_polynomial(text: str, ring: Ring = ZZ, arity: int | None = None) -> Polynomial:
    """Parse ``text`` into a canonical polynomial in ``x0, x1, ...``."""
    p = _Parser(text, ring, allow_formulas=False)
    tree = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    n = p.max_free + 1
    if arity is not None:
        if arity < n:
            raise ParseError(f"x{p.max_free} does not fit arity {arity}")
        n = arity
    return _to_poly(tree, ring, n, lambda key: key[1])


# -- formula AST -------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    lhs: Polynomial
    rhs: Polynomial

    @property
    def poly(self) -> Polynomial:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class Exists:
    var: int
    body: object


@dataclass(frozen=True)
class Forall:
    var: int
    body: object


@dataclass(frozen=True)
class ParsedFormula:
    """A formula whose free variables are ``0..free-1`` and bound ones follow."""

    formula: object
    free: int
    total: int
    ring: Ring = ZZ
    names: dict = field(default_factory=dict, compare=False)


def parse_formula(text: str, ring: Ring = ZZ) -> ParsedFormula:
    p = _Parser(text, ring, allow_formulas=True)
    tree = p.formula()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    free = max(p.max_free + 1, 1)
    total = free + p.n_bound

    def index(key):
        kind, k = key
        return k if kind == "free" else free + k

    names = {}

    def build(node):
        op = node[0]
        if op == "atom":
            return Atom(_to_poly(node[1], ring, total, index), _to_poly(node[2], ring, total, index))
        if op == "and":
            return And(build(node[1]), build(node[2]))
        if op == "or":
            return Or(build(node[1]), build(node[2]))
        if op == "not":
            return Not(build(node[1]))
        var = free + node[1]
        names[var] = node[2]
        cls = Exists if op == "exists" else Forall
        return cls(var, build(node[3]))

    return ParsedFormula(build(tree), free, total, ring, names)


def format_polynomial(p: Polynomial, names: Sequence[str] | None = None) -> str:
    """Text form accepted by :func:`parse_polynomial`."""
    unit = "i" if p.ring.kind == "gauss" else "sqrtd"
    pieces = []
    for coeff, exps in p.terms:
        a, b = coeff.a, coeff.b
        mono = []
        for i, k in enumerate(exps):
            if k:
                v = names[i] if names else f"x{i}"
                mono.append(v if k == 1 else f"{v}^{k}")
        if b == 0:
            neg = a < 0
            mag = abs(a)
            c = "" if (mag == 1 and mono) else str(mag)
        elif a == 0:
            neg = b < 0
            mag = abs(b)
            c = unit if mag == 1 else f"{mag}*{unit}"
        else:
            neg = False
            sign = "+" if b > 0 else "-"
            bb = unit if abs(b) == 1 else f"{abs(b)}*{unit}"
            c = f"({a} {sign} {bb})"
        body = "*".join(([c] if c else []) + mono)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces) if pieces else "0"


def format_formula(pf: ParsedFormula) -> str:
    def name(i):
        return f"x{i}"

    names = [name(i) for i in range(pf.total)]

    def go(node) -> str:
        if isinstance(node, Atom):
            return f"{format_polynomial(node.lhs, names)} = {format_polynomial(node.rhs, names)}"
        if isinstance(node, (And, Or)):
            word = "and" if isinstance(node, And) else "or"
            return f"({go(node.left)}) {word} ({go(node.right)})"
        if isinstance(node, Not):
            return f"not ({go(node.body)})"
        word = "exists" if isinstance(node, Exists) else "forall"
        return f"{word} {name(node.var)} ({go(node.body)})"

    return go(pf.formula)


_REFUSAL = (
    "{0} is outside the positive-existential fragment: Diophantine sets are "
    "closed under conjunction and existential projection but not under "
    "complement, so only 'and' and 'exists' compile"
)


def compile_formula(pf: ParsedFormula | str, ring: Ring | None = None, domain: str = "N") -> DiophantineSet:
    """Diophantine set of the tuples ``(x0, ..., x{free-1})`` satisfying the formula.

    Conjunction becomes :func:`set_intersect` and ``exists`` becomes
    :func:`set_project` of the body's set.
    """
    if isinstance(pf, str):
        pf = parse_formula(pf, ring or ZZ)
    ring = pf.ring
    if ring.kind != "Z":
        domain = "Z"

    def go(node, scope: list[int]) -> DiophantineSet:
        if isinstance(node, Atom):
            p = node.poly
            pos = {g: k for k, g in enumerate(scope)}
            rest = iter(range(len(scope), pf.total))
            mapping = [pos[g] if g in pos else next(rest) for g in range(pf.total)]
            q = p.remap(mapping, pf.total).with_arity(len(scope))
            return DiophantineSet(ring, len(scope), 0, q, domain)
        if isinstance(node, And):
            return set_intersect(go(node.left, scope), go(node.right, scope))
        if isinstance(node, Exists):
            inner = go(node.body, scope + [node.var])
            return set_project(inner, IndexSet(len(scope) + 1, tuple(range(1, len(scope) + 1))))
        kind = {Or: "'or'", Not: "'not'", Forall: "'forall'"}[type(node)]
        raise UnsupportedConnective(_REFUSAL.format(kind))

    return go(pf.formula, list(range(pf.free)))


def holds_bounded(pf: ParsedFormula, point: Sequence[int], bound: int, domain: str = "N") -> bool:
    """Truth of the formula at ``point`` with every quantifier ranging over a box.

    The box is ``0..bound`` for domain N and ``-bound..bound`` for Z; the
    independent reference for compiler soundness.
    """
    values = range(0, bound + 1) if domain == "N" else range(-bound, bound + 1)
    env = list(point) + [0] * (pf.total - len(point))

    def go(node) -> bool:
        if isinstance(node, Atom):
            return node.lhs.evaluate(env) == node.rhs.evaluate(env)
        if isinstance(node, And):
            return go(node.left) and go(node.right)
        if isinstance(node, Or):
            return go(node.left) or go(node.right)
        if isinstance(node, Not):
            return not go(node.body)
        results = []
        for v in values:
            env[node.var] = v
            results.append(go(node.body))
            if isinstance(node, Exists) and results[-1]:
                break
            if isinstance(node, Forall) and not results[-1]:
                break
        env[node.var] = 0
        return any(results) if isinstance(node, Exists) else all(results)

    return go(pf.formula)
