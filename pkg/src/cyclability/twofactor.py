"""2-factors as explicit cycle lists, their validation and basic transforms."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Graph


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class TwoFactor:
    cycles: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, cycles: Iterable[Sequence[int]]) -> "TwoFactor":
        return cls(tuple(tuple(int(v) for v in c) for c in cycles))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "TwoFactor":
        """Trace cycles of a degree-2 edge set, starting each at its smallest vertex."""
        nb: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            nb[u].append(v)
            nb[v].append(u)
        seen = [False] * n
        cycles = []
        for start in range(n):
            if seen[start] or not nb[start]:
                continue
            cyc = [start]
            seen[start] = True
            prev, cur = start, min(nb[start])
            while cur != start:
                cyc.append(cur)
                seen[cur] = True
                a, b = nb[cur]
                prev, cur = cur, (b if a == prev else a)
            cycles.append(tuple(cyc))
        return cls(tuple(cycles))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for c in self.cycles:
            for k, u in enumerate(c):
                v = c[(k + 1) % len(c)]
                out.append((min(u, v), max(u, v)))
        return out

    def vertices(self) -> list[int]:
        return [v for c in self.cycles for v in c]

    def cycle_of(self, v: int) -> int:
        for k, c in enumerate(self.cycles):
            if v in c:
                return k
        raise KeyError(v)

    def relabel(self, perm: Sequence[int]) -> "TwoFactor":
        return TwoFactor(tuple(tuple(perm[v] for v in c) for c in self.cycles))

    def to_json(self) -> dict:
        return {"cycles": [list(c) for c in self.cycles]}

    @classmethod
    def from_json(cls, data: str | dict) -> "TwoFactor":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.of(data["cycles"])


@dataclass(frozen=True)
class Violation:
    kind: str  # NonEdge | Overlap | NotSpanning | ShortCycle
    detail: str
    location: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def validate(graph: Graph, tf: TwoFactor) -> Violation | None:
    """Return the first problem found, or None for a valid 2-factor."""
    seen: dict[int, int] = {}
    for k, c in enumerate(tf.cycles):
        if len(c) < 3:
            return Violation("ShortCycle", f"cycle {k} has {len(c)} vertices", (k,))
        for v in c:
            if not 0 <= v < graph.n:
                return Violation("NonEdge", f"vertex {v} not in graph", (v,))
            if v in seen:
                return Violation("Overlap", f"vertex {v} in cycles {seen[v]} and {k}", (v,))
            seen[v] = k
        for t, u in enumerate(c):
            w = c[(t + 1) % len(c)]
            if not graph.has_edge(u, w):
                return Violation("NonEdge", f"[{u},{w}] in cycle {k}", (u, w))
    if len(seen) != graph.n:
        missing = next(v for v in range(graph.n) if v not in seen)
        return Violation("NotSpanning", f"vertex {missing} uncovered", (missing,))
    return None


def is_valid(graph: Graph, tf: TwoFactor) -> bool:
    return validate(graph, tf) is None


def separates(tf: TwoFactor, targets: Iterable[int]) -> bool:
    targets = set(targets)
    if len(tf.cycles) != len(targets):
        return False
    return all(len(targets.intersection(c)) == 1 for c in tf.cycles)


def shift_jump(tf: TwoFactor, m: int, n: int, ell: int) -> TwoFactor:
    """Move a 2-factor of C_m x C_n onto the jump-``ell`` product.

    Column m-1 is relabelled u_{m-1,j} -> u_{m-1,j-ell}; this keeps every
    edge valid provided no edge joins columns m-2 and m-1.
    """
    if ell % n == 0:
        return tf
    last = (m - 1) * n
    for u, v in tf.edges():
        if (u // n, v // n) in ((m - 2, m - 1), (m - 1, m - 2)):
            raise PreconditionViolated(f"edge [{u},{v}] joins columns {m - 2} and {m - 1}")
    perm = list(range(m * n))
    for j in range(n):
        perm[last + j] = last + (j - ell) % n
    return tf.relabel(perm)
