"""Exact arithmetic in Z, Z[sqrt d] (d square-free, d >= 2) and Z[i].

Elements are pairs ``(a, b)`` of Python ints standing for ``a + b*w`` with
``w = sqrt(d)`` or ``w = i``.  Everything is value-typed and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import DomainError, RingMismatch

__all__ = [
    "Ring",
    "RingElement",
    "ZZ",
    "GAUSS",
    "quad",
    "is_squarefree",
    "ring_add",
    "ring_mul",
    "conj_norm",
    "is_rational_integer",
]


def is_squarefree(n: int) -> bool:
    """Trial division up to sqrt(|n|)."""
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Ring descriptor: ``kind`` is ``"Z"``, ``"quad"`` or ``"gauss"``."""

    kind: str
    d: int = 0

    def __post_init__(self):
        if self.kind == "Z":
            if self.d != 0:
                raise DomainError("Z carries no d")
        elif self.kind == "gauss":
            if self.d != -1:
                raise DomainError("Gaussian integers have d = -1")
        elif self.kind == "quad":
            if self.d < 2:
                raise DomainError(f"Z[sqrt d] needs d >= 2, got {self.d}")
            if not is_squarefree(self.d):
                raise DomainError(f"d = {self.d} is not square-free")
        else:
            raise DomainError(f"unknown ring kind {self.kind!r}")

    @property
    def conjoin_d(self) -> int:
        """Square-free non-square d' used by the norm-form combiner."""
        if self.kind == "quad":
            return 3 if self.d == 2 else 2
        if self.kind == "gauss":
            return 2
        return 0

    def __call__(self, a: int = 0, b: int = 0) -> RingElement:
        return RingElement(a, b, self)

    @property
    def zero(self) -> RingElement:
        return RingElement(0, 0, self)

    @property
    def one(self) -> RingElement:
        return RingElement(1, 0, self)

    @property
    def unit(self) -> RingElement:
        """The adjoined generator sqrt(d) or i."""
        if self.kind == "Z":
            raise DomainError("Z has no adjoined generator")
        return RingElement(0, 1, self)

    def to_json(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "gauss":
            return "gauss"
        return {"quad": self.d}

    @classmethod
    def from_json(cls, obj) -> Ring:
        if obj == "Z":
            return ZZ
        if obj == "gauss":
            return GAUSS
        if isinstance(obj, dict) and set(obj) == {"quad"}:
            return quad(int(obj["quad"]))
        raise DomainError(f"bad ring tag {obj!r}")

    def __str__(self):
        if self.kind == "Z":
            return "Z"
        if self.kind == "gauss":
            return "Z[i]"
        return f"Z[sqrt{self.d}]"


ZZ = Ring("Z")
GAUSS = Ring("gauss", -1)


def quad(d: int) -> Ring:
    return Ring("quad", d)


@dataclass(frozen=True)
class RingElement:
    a: int
    b: int
    ring: Ring

    def __post_init__(self):
        if self.ring.kind == "Z" and self.b != 0:
            raise DomainError("elements of Z have b = 0")

    def _coerce(self, other) -> RingElement:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return RingElement(other, 0, self.ring)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(-self.a, -self.b, self.ring)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElement(self.a - o.a, self.b - o.b, self.ring)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.ring.d
        return RingElement(
            self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a, self.ring
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are not ring elements")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, RingElement):
            return (self.a, self.b, self.ring) == (other.a, other.b, other.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.ring))

    def conj(self) -> RingElement:
        return RingElement(self.a, -self.b, self.ring)

    def norm(self) -> int:
        """x * conj(x) as a rational integer."""
        return self.a * self.a - self.ring.d * self.b * self.b

    def divides(self, other: RingElement) -> bool:
        return self.exact_div(other) is not None

    def exact_div(self, num: RingElement) -> RingElement | None:
        """``num / self`` if it lies in the ring, else None."""
        num = self._coerce(num)
        n = self.norm()
        if n == 0:
            return None if num else self.ring.zero
        top = num * self.conj()
        if top.a % n or top.b % n:
            return None
        return RingElement(top.a // n, top.b // n, self.ring)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    def __repr__(self):
        return f"RingElement({self.a}, {self.b}, {self.ring})"

    def __str__(self):
        if self.ring.kind == "Z" or self.b == 0:
            return str(self.a)
        w = "i" if self.ring.kind == "gauss" else f"sqrt{self.ring.d}"
        if self.a == 0:
            return f"{self.b}*{w}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*{w}"


def ring_add(x: RingElement, y: RingElement) -> RingElement:
    if x.ring != y.ring:
        raise RingMismatch(f"{x.ring} vs {y.ring}")
    return x + y


def ring_mul(x: RingElement, y: RingElement) -> RingElement:
    if x.ring != y.ring:
        raise RingMismatch(f"{x.ring} vs {y.ring}")
    return x * y


def conj_norm(x: RingElement) -> tuple[RingElement, RingElement]:
    """Return ``(conj(x), x*conj(x))``; the norm is returned as a ring element."""
    c = x.conj()
    return c, x * c


def is_rational_integer(x: RingElement) -> bool:
    return x.b == 0


def isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None
