"""Exhaustive search for separating 2-factors.

Binary branching on edges (include / exclude) at the lowest-index vertex that
still needs an edge.  Each branch copies the flat state arrays; constraint
propagation forces edges at vertices whose remaining options are exactly two
and drops edges at saturated vertices.  Partial paths remember their far end
and how many targets they carry, which gives the separation pruning:

* joining two paths that carry targets,
* closing a cycle with no target or several targets,
* closing more cycles than there are targets,
* a vertex left with fewer than two usable edges.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .graphs import Graph
from .twofactor import TwoFactor

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "CYCLABLE_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Witness:
    two_factor: TwoFactor
    nodes: int
    outcome = "witness"


@dataclass(frozen=True)
class ProvedNone:
    nodes: int
    outcome = "proved_none"


@dataclass(frozen=True)
class BudgetExceeded:
    nodes: int
    outcome = "budget_exceeded"


SearchResult = Witness | ProvedNone | BudgetExceeded


class _OutOfBudget(Exception):
    pass


class _Fail(Exception):
    pass


class _Search:
    def __init__(self, graph: Graph, targets: Iterable[int] | None, budget: int):
        self.n = graph.n
        self.edges = graph.edges()
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(graph.n)]
        self.eid: dict[tuple[int, int], int] = {}
        for e, (u, v) in enumerate(self.edges):
            self.inc[u].append((v, e))
            self.inc[v].append((u, e))
            self.eid[(u, v)] = self.eid[(v, u)] = e
        for lst in self.inc:
            lst.sort()
        self.separating = targets is not None
        tset = set(targets or ())
        self.k = len(tset)
        self.is_target = [1 if v in tset else 0 for v in range(graph.n)]
        self.budget = budget
        self.nodes = 0

    # state: est (per edge: 0 open, 1 in, -1 out), deg, av, end, tc, [closed]
    def initial(self):
        n = self.n
        st = ([0] * len(self.edges), [0] * n, [len(self.inc[v]) for v in range(n)],
              list(range(n)), self.is_target[:], [0])
        if any(a < 2 for a in st[2]):
            return None
        ops = []
        for v in range(n):
            if st[2][v] == 2:
                ops.extend(("+", e) for _, e in self.inc[v])
        try:
            self._run(st, ops)
        except _Fail:
            return None
        return st

    def _run(self, st, ops):
        est, deg, av, end, tc, closed = st
        inc, edges = self.inc, self.edges
        while ops:
            kind, e = ops.pop()
            cur = est[e]
            if kind == "+":
                if cur == 1:
                    continue
                if cur == -1:
                    raise _Fail
                u, v = edges[e]
                if deg[u] == 2 or deg[v] == 2:
                    raise _Fail
                est[e] = 1
                deg[u] += 1
                deg[v] += 1
                a, b = end[u], end[v]
                if a == v:
                    if self.separating:
                        if tc[u] != 1:
                            raise _Fail
                        closed[0] += 1
                        if closed[0] > self.k:
                            raise _Fail
                else:
                    t = tc[u] + tc[v]
                    if self.separating and t > 1:
                        raise _Fail
                    end[a], end[b] = b, a
                    tc[a] = tc[b] = t
                    if self.separating and t != 1:
                        f = self.eid.get((a, b))
                        if f is not None and est[f] == 0:
                            ops.append(("-", f))
                for x in (u, v):
                    if deg[x] == 2:
                        for _, f in inc[x]:
                            if est[f] == 0:
                                ops.append(("-", f))
            else:
                if cur == -1:
                    continue
                if cur == 1:
                    raise _Fail
                est[e] = -1
                for x in edges[e]:
                    av[x] -= 1
                    if av[x] < 2:
                        raise _Fail
                    if av[x] == 2 and deg[x] < 2:
                        for _, f in inc[x]:
                            if est[f] == 0:
                                ops.append(("+", f))

    def _branch_vertex(self, st):
        deg = st[1]
        for v in range(self.n):
            if deg[v] < 2:
                return v
        return -1

    def solutions(self) -> Iterator[list[int]]:
        st = self.initial()
        if st is None:
            return
        stack = [st]
        while stack:
            st = stack.pop()
            self.nodes += 1
            if self.nodes > self.budget:
                raise _OutOfBudget
            v = self._branch_vertex(st)
            if v < 0:
                yield st[0]
                continue
            if self.separating and st[5][0] == self.k:
                continue
            est = st[0]
            e = next(f for _, f in self.inc[v] if est[f] == 0)
            # push exclude first so include is explored first
            for kind in ("-", "+"):
                child = (est[:], st[1][:], st[2][:], st[3][:], st[4][:], st[5][:])
                try:
                    self._run(child, [(kind, e)])
                except _Fail:
                    continue
                stack.append(child)

    def to_two_factor(self, est) -> TwoFactor:
        return TwoFactor.from_edges(self.n, [self.edges[e] for e, s in enumerate(est) if s == 1])


def find_separating_2factor(graph: Graph, targets: Iterable[int], budget: int | None = None) -> SearchResult:
    targets = list(targets)
    if not targets or len(set(targets)) != len(targets):
        raise ValueError("targets must be distinct and non-empty")
    if any(not 0 <= t < graph.n for t in targets):
        raise ValueError("target outside the graph")
    search = _Search(graph, targets, budget or default_budget())
    try:
        for est in search.solutions():
            return Witness(search.to_two_factor(est), search.nodes)
    except _OutOfBudget:
        return BudgetExceeded(search.nodes)
    return ProvedNone(search.nodes)


def enumerate_2factors(graph: Graph, limit: int, budget: int | None = None) -> list[TwoFactor]:
    if limit < 1:
        raise ValueError("limit must be at least 1")
    search = _Search(graph, None, budget or default_budget())
    out = []
    try:
        for est in search.solutions():
            out.append(search.to_two_factor(est))
            if len(out) >= limit:
                break
    except _OutOfBudget:
        pass
    return out


@dataclass(frozen=True)
class CyclabilityReport:
    verdict: str  # cyclable | not_cyclable | budget_exceeded
    subset: tuple[int, ...] | None
    nodes: int
    subsets_tested: int
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "subset": list(self.subset) if self.subset else None,
                "nodes": self.nodes, "subsets_tested": self.subsets_tested}


def orbit_representatives(n: int, k: int, generators: Sequence[Sequence[int]] = ()) -> list[tuple[int, ...]]:
    """Lexicographically smallest member of each orbit of k-subsets."""
    gens = [tuple(g) for g in generators]
    if not gens:
        return list(itertools.combinations(range(n), k))
    seen: set[tuple[int, ...]] = set()
    reps = []
    for sub in itertools.combinations(range(n), k):
        if sub in seen:
            continue
        reps.append(sub)
        frontier = [sub]
        seen.add(sub)
        while frontier:
            cur = frontier.pop()
            for g in gens:
                img = tuple(sorted(g[v] for v in cur))
                if img not in seen:
                    seen.add(img)
                    frontier.append(img)
    return reps


def _check_subset(args):
    graph, subset, budget = args
    return subset, find_separating_2factor(graph, subset, budget)


def candidate_subsets(graph: Graph, k: int, vertex_transitive: bool = False,
                      generators: Sequence[Sequence[int]] = ()) -> list[tuple[int, ...]]:
    if generators:
        return orbit_representatives(graph.n, k, generators)
    subs = itertools.combinations(range(graph.n), k)
    if vertex_transitive:
        return [s for s in subs if s[0] == 0]
    return list(subs)


def is_k_spanning_cyclable(graph: Graph, k: int, budget: int | None = None, vertex_transitive: bool = False,
                           generators: Sequence[Sequence[int]] = (), jobs: int = 1,
                           keep_witnesses: bool = False) -> CyclabilityReport:
    """Check every k-subset (or one per symmetry class) for a separating 2-factor.

    The report always describes the lexicographically first failing subset and
    counts work only up to that subset, whatever ``jobs`` is.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = budget or default_budget()
    subsets = candidate_subsets(graph, k, vertex_transitive, generators)
    if jobs > 1 and len(subsets) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_subset, [(graph, s, budget) for s in subsets], chunksize=8))
    else:
        results = []
        for s in subsets:
            r = _check_subset((graph, s, budget))
            results.append(r)
            if not isinstance(r[1], Witness):
                break
    nodes = 0
    witnesses = {}
    for tested, (s, r) in enumerate(results, 1):
        nodes += r.nodes
        if isinstance(r, ProvedNone):
            return CyclabilityReport("not_cyclable", s, nodes, tested, witnesses)
        if isinstance(r, BudgetExceeded):
            return CyclabilityReport("budget_exceeded", s, nodes, tested, witnesses)
        if keep_witnesses:
            witnesses[s] = r.two_factor
    return CyclabilityReport("cyclable", None, nodes, len(results), witnesses)
