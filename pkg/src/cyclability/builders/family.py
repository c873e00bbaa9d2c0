"""Grid family context: automorphisms, column bands and orbit dispatch.

A grid family is P_m x C_n (``tau`` None) or the product closed by
u_{m-1,j} ~ u_{0,tau(j)}.  Every construction in the builders produces a
2-factor for some image of the targets under the automorphism group; the
dispatcher walks the target orbit in lexicographic order and maps the first
witness back.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

from ..graphs import Graph, build_path_cycle, build_pseudo_perm, build_two_column
from ..twofactor import TwoFactor, separates, validate

Coord = tuple[int, int]


def shift_tau(n: int, ell: int) -> tuple[int, ...]:
    return tuple((j + ell) % n for j in range(n))


def invert(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


class GridFamily:
    def __init__(self, m: int, n: int, tau: Sequence[int] | None):
        self.m, self.n = m, n
        self.tau = tuple(tau) if tau is not None else None
        if self.tau is None:
            self.graph = build_path_cycle(m, n)
        elif m == 2:
            self.graph = build_two_column(n, self.tau)
        else:
            self.graph = build_pseudo_perm(m, n, self.tau)
        self.ell = None
        if self.tau is not None and all(self.tau[j] == (self.tau[0] + j) % n for j in range(n)):
            self.ell = self.tau[0]
        self._aut: list[tuple[int, ...]] | None = None

    @property
    def key(self):
        return (self.m, self.n, self.tau)

    def v(self, i: int, j: int) -> int:
        return i * self.n + j % self.n

    def coord(self, v: int) -> Coord:
        return divmod(v, self.n)

    # -- symmetry ---------------------------------------------------------

    def generators(self) -> list[tuple[int, ...]]:
        """Rotations and reflections that are automorphisms of this product."""
        m, n = self.m, self.n
        gens = []
        if self.tau is not None:
            rho = [0] * (m * n)
            for i in range(m):
                for j in range(n):
                    rho[i * n + j] = (i + 1) * n + j if i < m - 1 else self.tau[j]
            gens.append(tuple(rho))
        gens.append(tuple(i * n + (j + 1) % n for i in range(m) for j in range(n)))
        for c in range(n):
            gens.append(tuple(i * n + (c - j) % n for i in range(m) for j in range(n)))
            gens.append(tuple((m - 1 - i) * n + (c - j) % n for i in range(m) for j in range(n)))
        gens.append(tuple((m - 1 - i) * n + j for i in range(m) for j in range(n)))
        return [g for g in gens if self.graph.is_automorphism(g)]

    def automorphisms(self) -> list[tuple[int, ...]]:
        """The group generated by the row/column rotations and reflections that preserve adjacency."""
        if self._aut is None:
            self._aut = _closure(self.m * self.n, tuple(self.generators()))
        return self._aut

    def orbit(self, targets: Iterable[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """(image, automorphism) pairs, one per distinct image, sorted by image."""
        targets = list(targets)
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        for g in self.automorphisms():
            img = tuple(sorted(g[t] for t in targets))
            if img not in seen:
                seen[img] = g
        return sorted(seen.items())

    # -- bands ------------------------------------------------------------

    def band(self, start: int, k: int) -> list[list[int]]:
        """``band[t][j]``: the vertex at position (t, j) of the k-column band from ``start``.

        Crossing the closing boundary composes the row labels with tau, so the
        band is a copy of P_k x C_n whenever tau is a rotation or reflection.
        """
        m, n = self.m, self.n
        rows = list(range(n))
        col = start % m
        out = []
        for t in range(k):
            out.append([col * n + rows[j] for j in range(n)])
            if col == m - 1 and t < k - 1:
                if self.tau is None:
                    raise ValueError("band crosses a missing closing boundary")
                rows = [self.tau[r] for r in rows]
            col = (col + 1) % m
        return out

    def embed(self, cycles: Iterable[Sequence[Coord]], band: list[list[int]]) -> list[tuple[int, ...]]:
        return [tuple(band[t][j % self.n] for t, j in c) for c in cycles]


@lru_cache(maxsize=256)
def _closure(size: int, gens: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    ident = tuple(range(size))
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                c = tuple(h[x] for x in g)
                if c not in seen:
                    seen.add(c)
                    order.append(c)
                    nxt.append(c)
        frontier = nxt
    return order


@lru_cache(maxsize=512)
def family(m: int, n: int, tau: tuple[int, ...] | None) -> GridFamily:
    return GridFamily(m, n, tau)


def hamilton_band(k: int, n: int) -> list[Coord]:
    """Hamilton cycle of P_k x C_n in band coordinates.

    Snake through rows 1..n-1 column by column, then return along row 0.
    """
    if k == 1:
        return [(0, j) for j in range(n)]
    cyc: list[Coord] = [(0, 0)]
    for t in range(k):
        rows = range(1, n) if t % 2 == 0 else range(n - 1, 0, -1)
        cyc.extend((t, j) for j in rows)
    cyc.extend((t, 0) for t in range(k - 1, 0, -1))
    return cyc


Construction = Callable[[GridFamily, tuple[int, ...]], "TwoFactor | None"]


def first_witness(fam: GridFamily, targets: Sequence[int], constructions: Sequence[Construction],
                  normalizing: Sequence[bool] | None = None) -> TwoFactor | None:
    """Try constructions in order over the target orbit; return a witness for ``targets``.

    A construction flagged as not normalizing is called once with the original
    targets and must handle symmetry itself (it returns a 2-factor of the
    family graph that separates some image of the targets).
    """
    targets = tuple(targets)
    orbit = None
    for idx, make in enumerate(constructions):
        normal = True if normalizing is None else normalizing[idx]
        if not normal:
            tf = make(fam, targets)
            if tf is not None:
                mapped = pull_back(fam, tf, targets)
                if mapped is not None:
                    return mapped
            continue
        if orbit is None:
            orbit = fam.orbit(targets)
        for img, g in orbit:
            tf = make(fam, img)
            if tf is not None and validate(fam.graph, tf) is None and separates(tf, img):
                return tf.relabel(invert(g))
    return None


def cycle_index(tf: TwoFactor, size: int) -> list[int]:
    idx = [-1] * size
    for k, c in enumerate(tf.cycles):
        for v in c:
            idx[v] = k
    return idx


def pull_back(fam: GridFamily, tf: TwoFactor, targets: Sequence[int]) -> TwoFactor | None:
    """Find an automorphism sending the targets to a set separated by ``tf``."""
    return pull_back_in(fam.graph, fam.automorphisms(), tf, targets)


def pull_back_in(graph: Graph, auts: Iterable[Sequence[int]], tf: TwoFactor,
                 targets: Sequence[int]) -> TwoFactor | None:
    if len(tf.cycles) != len(targets) or validate(graph, tf) is not None:
        return None
    idx = cycle_index(tf, graph.n)
    k = len(targets)
    for g in auts:
        if len({idx[g[t]] for t in targets}) == k:
            return tf.relabel(invert(g))
    return None
