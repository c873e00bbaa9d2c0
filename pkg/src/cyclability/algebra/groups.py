"""Finite Abelian groups given as direct sums of cyclic factors.

Elements are plain tuples of residues, one per cyclic factor.  Vertices of a
Cayley graph are indexed by the lexicographic rank of their residue vector.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Element = tuple[int, ...]


class ConnectionSetError(ValueError):
    """Base class for rejected connection sets."""


class IdentityInSet(ConnectionSetError):
    pass


class NotInverseClosed(ConnectionSetError):
    pass


class NotGenerating(ConnectionSetError):
    pass


class UnsupportedValency(ConnectionSetError):
    pass


class InvalidElement(ConnectionSetError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """Z_{d_1} + ... + Z_{d_t}; an empty moduli list is the trivial group."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "moduli", tuple(int(d) for d in self.moduli))
        for d in self.moduli:
            if d < 2:
                raise ValueError(f"every modulus must be >= 2, got {d}")

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def element(self, values: Sequence[int]) -> Element:
        """Reduce an integer vector into the group."""
        if len(values) != len(self.moduli):
            raise InvalidElement(f"{tuple(values)} has wrong length for moduli {self.moduli}")
        return tuple(int(v) % d for v, d in zip(values, self.moduli))

    def check(self, g: Sequence[int]) -> Element:
        g = tuple(g)
        if len(g) != len(self.moduli) or any(not 0 <= v < d for v, d in zip(g, self.moduli)):
            raise InvalidElement(f"{g} is not a reduced element of Z{self.moduli}")
        return g

    def add(self, g: Element, h: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.moduli))

    def neg(self, g: Element) -> Element:
        return tuple((-a) % d for a, d in zip(g, self.moduli))

    def scale(self, k: int, g: Element) -> Element:
        return tuple((k * a) % d for a, d in zip(g, self.moduli))

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.moduli))

    def index(self, g: Element) -> int:
        idx = 0
        for a, d in zip(g, self.moduli):
            idx = idx * d + a
        return idx

    def from_index(self, idx: int) -> Element:
        out = []
        for d in reversed(self.moduli):
            idx, a = divmod(idx, d)
            out.append(a)
        return tuple(reversed(out))


def element_order(g: Element, G: GroupSpec) -> int:
    """Least k >= 1 with k*g = e."""
    k = 1
    for a, d in zip(g, G.moduli):
        k = math.lcm(k, d // math.gcd(a, d))
    return k


def is_involution(g: Element, G: GroupSpec) -> bool:
    return g != G.zero and G.add(g, g) == G.zero


def in_cyclic_subgroup(g: Element, h: Element, G: GroupSpec) -> bool:
    """True iff g is a multiple of h."""
    return multiple_of(g, h, G) is not None


def multiple_of(g: Element, h: Element, G: GroupSpec) -> int | None:
    """The least k >= 0 with k*h = g, or None."""
    cur = G.zero
    for k in range(element_order(h, G)):
        if cur == g:
            return k
        cur = G.add(cur, h)
    return None


def generated_subgroup(G: GroupSpec, gens: Iterable[Element]) -> set[Element]:
    gens = list(gens)
    seen = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = G.add(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def normalize_connection(G: GroupSpec, S: Iterable[Sequence[int]]) -> tuple[Element, ...]:
    """Validate element shapes, drop duplicates and sort lexicographically."""
    return tuple(sorted({G.check(s) for s in S}))


def validate_connection_set(G: GroupSpec, S: Iterable[Sequence[int]]) -> int:
    """Return the valency of Cay(G, S) after checking all connection-set rules."""
    conn = normalize_connection(G, S)
    members = set(conn)
    if G.zero in members:
        raise IdentityInSet("the identity may not be in the connection set")
    for s in conn:
        if G.neg(s) not in members:
            raise NotInverseClosed(f"inverse of {s} missing")
    if len(generated_subgroup(G, conn)) != G.order:
        raise NotGenerating("connection set does not generate the group")
    valency = len(conn)
    if valency not in (3, 4):
        raise UnsupportedValency(f"valency {valency} not in {{3, 4}}")
    return valency
