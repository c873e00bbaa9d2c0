"""Simple undirected graphs and the canonical constructors for each family.

Grid families (P_m x C_n, pseudo products, permuted products) index vertex
u_{i,j} (column i, row j) as ``i * n + j``.  Circulants index u_i as ``i``.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

from .algebra.groups import GroupSpec, normalize_connection, validate_connection_set


class BadParameters(ValueError):
    pass


class NotAPermutation(BadParameters):
    pass


class Graph:
    """Immutable simple graph on vertices 0..n-1."""

    __slots__ = ("n", "adj", "_nbrs", "name")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], name: str = ""):
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise BadParameters(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise BadParameters(f"edge ({u}, {v}) out of range")
            if v in nbrs[u]:
                raise BadParameters(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._nbrs = tuple(frozenset(s) for s in nbrs)
        self.name = name

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbrs[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_regular(self, k: int) -> bool:
        return all(len(a) == k for a in self.adj)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        if sorted(perm) != list(range(self.n)):
            return False
        return all(self.has_edge(perm[u], perm[v]) for u, v in self.edges())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.edge_count}>"


def grid_index(i: int, j: int, n: int) -> int:
    return i * n + j


def grid_coord(v: int, n: int) -> tuple[int, int]:
    return divmod(v, n)


def build_path_cycle(m: int, n: int) -> Graph:
    """P_m x C_n (the cylinder)."""
    if m < 1 or n < 3:
        raise BadParameters(f"P_m x C_n needs m >= 1, n >= 3 (got m={m}, n={n})")
    edges = [(i * n + j, i * n + (j + 1) % n) for i in range(m) for j in range(n)]
    edges += [(i * n + j, (i + 1) * n + j) for i in range(m - 1) for j in range(n)]
    return Graph(m * n, edges, name=f"P{m}xC{n}")


def _closing_product(m: int, n: int, tau: Sequence[int], name: str) -> Graph:
    base = build_path_cycle(m, n)
    edges = base.edges() + [((m - 1) * n + j, tau[j]) for j in range(n)]
    return Graph(m * n, edges, name=name)


def build_pseudo(m: int, n: int, ell: int) -> Graph:
    """C_m x_ell C_n: the cylinder plus u_{m-1,j} ~ u_{0,j+ell}."""
    if m < 3 or n < 3 or not 0 <= ell < n:
        raise BadParameters(f"pseudo product needs m, n >= 3 and 0 <= ell < n (got {m}, {n}, {ell})")
    return _closing_product(m, n, [(j + ell) % n for j in range(n)], f"C{m}x{ell}C{n}")


def check_permutation(tau: Sequence[int], n: int) -> tuple[int, ...]:
    tau = tuple(int(t) for t in tau)
    if len(tau) != n or sorted(tau) != list(range(n)):
        raise NotAPermutation(f"{tau} is not a permutation of range({n})")
    return tau


def build_pseudo_perm(m: int, n: int, tau: Sequence[int]) -> Graph:
    """C_m x_tau C_n: the cylinder plus u_{m-1,j} ~ u_{0,tau(j)}."""
    if m < 3 or n < 3:
        raise BadParameters(f"permuted product needs m, n >= 3 (got {m}, {n})")
    tau = check_permutation(tau, n)
    return _closing_product(m, n, tau, f"C{m}xtauC{n}")


def build_two_column(n: int, tau: Sequence[int]) -> Graph:
    """Two n-cycles joined by the identity matching and the matching tau.

    This is what the coset walk produces when a generator has index two in
    the group; tau must move every row so the graph stays simple.
    """
    if n < 3:
        raise BadParameters("two-column product needs n >= 3")
    tau = check_permutation(tau, n)
    if any(tau[j] == j for j in range(n)):
        raise BadParameters("two-column product needs a fixed-point-free tau")
    return _closing_product(2, n, tau, f"C2xtauC{n}")


def build_circulant(n: int, jumps: Iterable[int]) -> Graph:
    """circ(n; +-j for j in jumps) with 1 <= j <= n/2."""
    jumps = sorted(set(int(j) for j in jumps))
    if n < 3 or not jumps or any(not 1 <= j <= n // 2 for j in jumps):
        raise BadParameters(f"circulant needs n >= 3 and jumps in [1, n/2] (got n={n}, jumps={jumps})")
    edges = set()
    for j in jumps:
        for i in range(n):
            a, b = i, (i + j) % n
            edges.add((min(a, b), max(a, b)))
    label = ",".join(str(j) for j in jumps)
    return Graph(n, sorted(edges), name=f"circ({n};{label})")


def build_hypercube(d: int) -> Graph:
    if d < 1:
        raise BadParameters("hypercube needs d >= 1")
    n = 1 << d
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)]
    return Graph(n, edges, name=f"Q{d}")


def build_cayley(G: GroupSpec, S: Iterable[Sequence[int]]) -> Graph:
    """Cay(G, S) with vertices in lexicographic residue order."""
    conn = normalize_connection(G, S)
    validate_connection_set(G, conn)
    edges = set()
    for g in G.elements():
        u = G.index(g)
        for s in conn:
            v = G.index(G.add(g, s))
            edges.add((min(u, v), max(u, v)))
    return Graph(G.order, sorted(edges), name=f"Cay(Z{list(G.moduli)})")


def export(graph: Graph, fmt: str = "json") -> str:
    edges = graph.edges()
    if fmt == "json":
        return json.dumps({"n": graph.n, "edges": [list(e) for e in edges]})
    if fmt == "dot":
        name = graph.name.replace('"', "'") or "G"
        lines = [f'graph "{name}" {{']
        lines += [f"  {v};" for v in range(graph.n) if not graph.adj[v]]
        lines += [f"  {u} -- {v};" for u, v in edges]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def import_json(text: str | dict) -> Graph:
    data = json.loads(text) if isinstance(text, str) else text
    return Graph(int(data["n"]), [tuple(e) for e in data["edges"]])
