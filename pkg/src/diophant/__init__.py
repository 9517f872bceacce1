"""Executable Diophantine set algebra, reductions to quadratic rings and
finite self-reference checks."""

from .dioset import DiophantineSet, conjoin, conjoin_all
from .errors import DiophantError
from .polynomial import Polynomial
from .rings import GAUSS, ZZ, Ring, RingElement, quad
from .search import SearchDomain, TriState, membership, solve_bounded

__all__ = [
    "DiophantError",
    "DiophantineSet",
    "GAUSS",
    "Polynomial",
    "Ring",
    "RingElement",
    "SearchDomain",
    "TriState",
    "ZZ",
    "conjoin",
    "conjoin_all",
    "membership",
    "quad",
    "solve_bounded",
]

__version__ = "0.1.0"
