"""Small Diophantine sets paired with their direct membership predicates."""

from __future__ import annotations

from diophant.dioset import (
    DiophantineSet,
    IndexSet,
    empty_set,
    full_set,
    graph_add,
    graph_identity,
    graph_mul,
    graph_of,
    proj_graph,
    set_compose,
    set_intersect,
    set_preimage,
    set_product,
    set_project,
    set_singleton,
)
from diophant.polynomial import Polynomial
from diophant.rings import ZZ


def x(i: int, arity: int) -> Polynomial:
    return Polynomial.var(ZZ, i, arity)


def evens() -> DiophantineSet:
    return DiophantineSet(ZZ, 1, 1, x(0, 2) - 2 * x(1, 2), "N")


def mult3() -> DiophantineSet:
    return DiophantineSet(ZZ, 1, 1, x(0, 2) - 3 * x(1, 2), "N")


def squares_graph() -> DiophantineSet:
    return graph_of(x(0, 1) ** 2)


def successor_graph() -> DiophantineSet:
    return graph_of(x(0, 1) + 1)


def le_relation() -> DiophantineSet:
    # x0 <= x1 over N
    return DiophantineSet(ZZ, 2, 1, x(0, 3) + x(2, 3) - x(1, 3), "N")


# name -> (set, predicate on a tuple of ints)
def constructor_fixtures() -> dict[str, list[tuple[str, DiophantineSet, object]]]:
    return {
        "product": [
            ("evens x {3}", set_product(evens(), set_singleton([3])), lambda p: p[0] % 2 == 0 and p[1] == 3),
            ("evens x full", set_product(evens(), full_set(1)), lambda p: p[0] % 2 == 0),
            ("{0} x {0}", set_product(set_singleton([0]), set_singleton([0])), lambda p: p == (0, 0)),
            ("le x mult3", set_product(le_relation(), mult3()), lambda p: p[0] <= p[1] and p[2] % 3 == 0),
        ],
        "intersect": [
            ("evens & mult3", set_intersect(evens(), mult3()), lambda p: p[0] % 6 == 0),
            ("evens & evens", set_intersect(evens(), evens()), lambda p: p[0] % 2 == 0),
            ("evens & empty", set_intersect(evens(), empty_set(1)), lambda p: False),
            ("le & le^T", set_intersect(le_relation(), _swap(le_relation())), lambda p: p[0] == p[1]),
        ],
        "project": [
            ("squares", set_project(squares_graph(), IndexSet(2, (2,))), lambda p: round(p[0] ** 0.5) ** 2 == p[0]),
            ("identity keep", set_project(evens(), IndexSet(1, (1,))), lambda p: p[0] % 2 == 0),
            ("(3,5) -> first", set_project(set_singleton([3, 5]), IndexSet(2, (1,))), lambda p: p == (3,)),
            ("le -> second", set_project(le_relation(), IndexSet(2, (2,))), lambda p: True),
        ],
        "preimage": [
            ("succ^-1(evens)", set_preimage(successor_graph(), evens()), lambda p: p[0] % 2 == 1),
            ("succ^-1(full)", set_preimage(successor_graph(), full_set(1)), lambda p: True),
            ("id^-1(mult3)", set_preimage(graph_identity(), mult3()), lambda p: p[0] % 3 == 0),
            ("sq^-1({4})", set_preimage(squares_graph(), set_singleton([4])), lambda p: p == (2,)),
        ],
        "compose": [
            ("add(id, id)", set_compose(graph_add(), [graph_identity(), graph_identity()]), lambda p: p[1] == 2 * p[0]),
            ("id(succ)", set_compose(graph_identity(), [successor_graph()]), lambda p: p[1] == p[0] + 1),
            ("mul(id, id)", set_compose(graph_mul(), [graph_identity(), graph_identity()]), lambda p: p[1] == p[0] ** 2),
            ("add(succ, id)", set_compose(graph_add(), [successor_graph(), graph_identity()]), lambda p: p[1] == 2 * p[0] + 1),
        ],
        "singleton": [
            ("{3}", set_singleton([3]), lambda p: p == (3,)),
            ("{(0,0)}", set_singleton([0, 0]), lambda p: p == (0, 0)),
            ("{(1,4)}", set_singleton([1, 4]), lambda p: p == (1, 4)),
        ],
        "proj_graph": [
            ("n=2 S={1}", proj_graph(2, IndexSet(2, (1,))), lambda p: p[2] == p[0]),
            ("n=1 S={1}", proj_graph(1, IndexSet(1, (1,))), lambda p: p[0] == p[1]),
            ("n=3 S={1,3}", proj_graph(3, IndexSet(3, (1, 3))), lambda p: (p[3], p[4]) == (p[0], p[2])),
        ],
    }


def _swap(S: DiophantineSet) -> DiophantineSet:
    return DiophantineSet(S.ring, S.params, S.aux, S.q.remap([1, 0] + list(range(2, S.q.arity)), S.q.arity), S.domain)
