"""Unexpanded polynomial expressions.

Iterated norm-form combinations square their inputs at every level, so the
defining polynomials of the reductions reach degree in the hundreds and
cannot be expanded into sparse form.  A :class:`PolyExpr` keeps the
arithmetic as a shared DAG whose leaves are sparse polynomials; it evaluates
exactly and expands on request when the result is small.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from .errors import ArityMismatch, RingMismatch
from .polynomial import Pair, Polynomial, _check_map, _pair_mul, _pair_pow, as_pair
from .rings import Ring, RingElement

__all__ = ["PolyExpr", "to_expr", "ExpansionTooLarge"]


class ExpansionTooLarge(ArithmeticError):
    pass


class PolyExpr:
    __slots__ = ("ring", "arity", "op", "args")

    def __init__(self, ring: Ring, arity: int, op: str, args: tuple):
        self.ring = ring
        self.arity = arity
        self.op = op
        self.args = args

    # -- construction -----------------------------------------------------
    @classmethod
    def leaf(cls, p: Polynomial) -> PolyExpr:
        return cls(p.ring, p.arity, "poly", (p,))

    @classmethod
    def compose(cls, inner, args: Sequence) -> PolyExpr:
        """``inner(args[0], args[1], ...)`` where each arg is an expression."""
        inner = to_expr(inner)
        if len(args) != inner.arity:
            raise ArityMismatch(f"inner has arity {inner.arity}, got {len(args)} arguments")
        args = [to_expr(a) for a in args]
        arity = max((a.arity for a in args), default=0)
        for a in args:
            if a.ring != inner.ring:
                raise RingMismatch(f"{a.ring} vs {inner.ring}")
        return cls(inner.ring, arity, "compose", (inner, tuple(args)))

    def _binary(self, other, op):
        other = to_expr(other, self.ring, self.arity)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return PolyExpr(self.ring, max(self.arity, other.arity), op, (self, other))

    def __add__(self, other):
        return self._binary(other, "add")

    def __radd__(self, other):
        return to_expr(other, self.ring, self.arity)._binary(self, "add")

    def __sub__(self, other):
        return self._binary(-to_expr(other, self.ring, self.arity), "add")

    def __rsub__(self, other):
        return to_expr(other, self.ring, self.arity)._binary(-self, "add")

    def __mul__(self, other):
        return self._binary(other, "mul")

    def __rmul__(self, other):
        return to_expr(other, self.ring, self.arity)._binary(self, "mul")

    def __neg__(self):
        return PolyExpr(self.ring, self.arity, "neg", (self,))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        return PolyExpr(self.ring, self.arity, "pow", (self, int(k)))

    # -- inspection -------------------------------------------------------
    def _walk(self):
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            if node.op == "poly":
                continue
            if node.op == "compose":
                stack.append(node.args[0])
                stack.extend(node.args[1])
            elif node.op == "pow":
                stack.append(node.args[0])
            else:
                stack.extend(node.args)

    def node_count(self) -> int:
        return sum(1 for _ in self._walk())

    def variables(self) -> set[int]:
        memo: dict[int, set[int]] = {}

        def go(node: PolyExpr) -> set[int]:
            key = id(node)
            if key in memo:
                return memo[key]
            if node.op == "poly":
                out = node.args[0].variables()
            elif node.op == "compose":
                inner = go(node.args[0])
                out = set()
                for i in inner:
                    out |= go(node.args[1][i])
            elif node.op in ("neg", "pow"):
                out = go(node.args[0])
            else:
                out = go(node.args[0]) | go(node.args[1])
            memo[key] = out
            return out

        return go(self)

    def degree_bound(self) -> int:
        memo: dict[int, int] = {}

        def go(node: PolyExpr) -> int:
            key = id(node)
            if key in memo:
                return memo[key]
            if node.op == "poly":
                out = node.args[0].degree
            elif node.op == "compose":
                out = go(node.args[0]) * max((go(a) for a in node.args[1]), default=0)
            elif node.op == "neg":
                out = go(node.args[0])
            elif node.op == "pow":
                out = go(node.args[0]) * node.args[1]
            elif node.op == "mul":
                out = go(node.args[0]) + go(node.args[1])
            else:
                out = max(go(node.args[0]), go(node.args[1]))
            memo[key] = out
            return out

        return go(self)

    # -- evaluation -------------------------------------------------------
    def eval_pairs(self, values: Sequence[Pair]) -> Pair:
        d = self.ring.d
        memo: dict[int, Pair] = {}

        def go(node: PolyExpr, vals) -> Pair:
            key = (id(node), id(vals))
            hit = memo.get(key)
            if hit is not None:
                return hit
            op = node.op
            if op == "poly":
                out = node.args[0].eval_pairs(vals)
            elif op == "compose":
                inner_vals = [go(a, vals) for a in node.args[1]]
                keep.append(inner_vals)
                out = go(node.args[0], inner_vals)
            elif op == "neg":
                a, b = go(node.args[0], vals)
                out = (-a, -b)
            elif op == "pow":
                out = _pair_pow(go(node.args[0], vals), node.args[1], d)
            elif op == "mul":
                out = _pair_mul(go(node.args[0], vals), go(node.args[1], vals), d)
            else:
                x = go(node.args[0], vals)
                y = go(node.args[1], vals)
                out = (x[0] + y[0], x[1] + y[1])
            memo[key] = out
            return out

        keep: list = []  # pins argument lists so their ids stay unique
        return go(self, list(values))

    def evaluate(self, values: Sequence) -> RingElement:
        if len(values) < self.arity:
            raise ArityMismatch(f"need {self.arity} values, got {len(values)}")
        pairs = [as_pair(v, self.ring) for v in values[: self.arity]]
        a, b = self.eval_pairs(pairs)
        return RingElement(a, b, self.ring)

    __call__ = evaluate

    # -- transformation ---------------------------------------------------
    def remap(self, mapping: Mapping[int, int] | Sequence[int], new_arity: int) -> PolyExpr:
        m = _check_map(mapping, self.arity, new_arity)
        memo: dict[int, PolyExpr] = {}

        def go(node: PolyExpr) -> PolyExpr:
            key = id(node)
            if key in memo:
                return memo[key]
            op = node.op
            if op == "poly":
                p = node.args[0]
                out = PolyExpr.leaf(p.with_arity(self.arity).remap(m, new_arity))
            elif op == "compose":
                out = PolyExpr(
                    node.ring, new_arity, "compose",
                    (node.args[0], tuple(go(a) for a in node.args[1])),
                )
            elif op == "pow":
                out = PolyExpr(node.ring, new_arity, "pow", (go(node.args[0]), node.args[1]))
            elif op == "neg":
                out = PolyExpr(node.ring, new_arity, "neg", (go(node.args[0]),))
            else:
                out = PolyExpr(node.ring, new_arity, op, (go(node.args[0]), go(node.args[1])))
            memo[key] = out
            return out

        return go(self)

    def with_arity(self, arity: int) -> PolyExpr:
        if arity < self.arity:
            used = self.variables()
            if used and max(used) >= arity:
                raise ArityMismatch(f"variable {max(used)} does not fit arity {arity}")
        return PolyExpr(self.ring, arity, self.op, self.args) if arity != self.arity else self

    def partial(self, fixed: Mapping[int, object]) -> PolyExpr:
        args = []
        for i in range(self.arity):
            if i in fixed:
                args.append(Polynomial.const(self.ring, fixed[i], self.arity))
            else:
                args.append(Polynomial.var(self.ring, i, self.arity))
        return PolyExpr.compose(self, args)

    def expand(self, max_terms: int = 200_000) -> Polynomial:
        memo: dict[int, Polynomial] = {}

        def check(p: Polynomial) -> Polynomial:
            if len(p) > max_terms:
                raise ExpansionTooLarge(f"expansion exceeds {max_terms} terms")
            return p

        def go(node: PolyExpr, arity: int) -> Polynomial:
            key = (id(node), arity)
            if key in memo:
                return memo[key]
            op = node.op
            if op == "poly":
                out = node.args[0].with_arity(max(arity, node.args[0].arity))
            elif op == "compose":
                subs = [go(a, arity).with_arity(arity) for a in node.args[1]]
                inner = go(node.args[0], node.args[0].arity)
                out = Polynomial.zero(node.ring, arity)
                for e, c in inner.pair_terms():
                    term = Polynomial.const(node.ring, c, arity)
                    for i, k in enumerate(e):
                        if k:
                            term = check(term * subs[i] ** k)
                    out = check(out + term)
            elif op == "neg":
                out = -go(node.args[0], arity)
            elif op == "pow":
                base = go(node.args[0], arity)
                out = Polynomial.const(node.ring, 1, base.arity)
                for _ in range(node.args[1]):
                    out = check(out * base)
            elif op == "mul":
                out = check(go(node.args[0], arity) * go(node.args[1], arity))
            else:
                out = check(go(node.args[0], arity) + go(node.args[1], arity))
            memo[key] = out
            return out

        return go(self, self.arity).with_arity(self.arity)

    def conj(self) -> PolyExpr:
        memo: dict[int, PolyExpr] = {}

        def go(node: PolyExpr) -> PolyExpr:
            key = id(node)
            if key in memo:
                return memo[key]
            op = node.op
            if op == "poly":
                out = PolyExpr.leaf(node.args[0].conj())
            elif op == "compose":
                out = PolyExpr(node.ring, node.arity, op, (go(node.args[0]), tuple(go(a) for a in node.args[1])))
            elif op == "pow":
                out = PolyExpr(node.ring, node.arity, op, (go(node.args[0]), node.args[1]))
            elif op == "neg":
                out = PolyExpr(node.ring, node.arity, op, (go(node.args[0]),))
            else:
                out = PolyExpr(node.ring, node.arity, op, (go(node.args[0]), go(node.args[1])))
            memo[key] = out
            return out

        return go(self)

    def __repr__(self):
        return (
            f"PolyExpr({self.ring}, arity={self.arity}, nodes={self.node_count()}, "
            f"degree<={self.degree_bound()})"
        )


def to_expr(x, ring: Ring | None = None, arity: int = 0) -> PolyExpr:
    if isinstance(x, PolyExpr):
        return x
    if isinstance(x, Polynomial):
        return PolyExpr.leaf(x)
    if ring is None:
        raise TypeError(f"cannot build an expression from {x!r} without a ring")
    return PolyExpr.leaf(Polynomial.const(ring, x, arity))
