"""Fit a template expansion so that targets in one column land in distinct cycles.

Targets only keep their relative row gaps under the family's symmetries, so a
request is (width, height, cyclic row gaps).  Targets are placed on base rows
of some column; each arc between consecutive target rows receives the missing
rows at one boundary inside the arc (an ``any`` boundary if possible, else an
``even`` one when the count is even).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from ..templates import ANY, EVEN, NONE, Lattice, PatternTemplate, load_templates


def _gap_orders(gaps: Sequence[int]) -> list[tuple[int, ...]]:
    k = len(gaps)
    out = []
    for seq in (tuple(gaps), tuple(reversed(gaps))):
        for r in range(k):
            rot = seq[r:] + seq[:r]
            if rot not in out:
                out.append(rot)
    return out


def _column_boundaries(t: PatternTemplate, lat: Lattice) -> list[int]:
    out = []
    for c in range(len(lat.H)):
        if c == t.reserved:
            continue
        if c == lat.m - 1 and lat.ell:
            continue
        out.append(c)
    return out


def _column_vectors(lat: Lattice, boundaries: Sequence[int], extra: int) -> Iterator[dict[int, int]]:
    modes = {b: lat.column_mode(b) for b in boundaries}
    usable = [b for b in boundaries if modes[b] != NONE]

    def rec(idx, rem):
        if idx == len(usable):
            if rem == 0:
                yield {}
            return
        b = usable[idx]
        step = 2 if modes[b] == EVEN else 1
        for c in range(0, rem + 1, step):
            for rest in rec(idx + 1, rem - c):
                if c:
                    rest = dict(rest)
                    rest[b] = c
                yield rest

    yield from rec(0, extra)


def _apply_columns(lat: Lattice, vec: dict[int, int]) -> Lattice:
    for c in sorted(vec, reverse=True):
        lat = lat.insert_columns(c, vec[c])
    return lat


def _apply_rows(lat: Lattice, vec: dict[int, int]) -> Lattice:
    for r in sorted(vec, reverse=True):
        lat = lat.insert_rows(r, vec[r])
    return lat


def _cycle_ids(lat: Lattice) -> list[int]:
    tf = lat.two_factor()
    ids = [-1] * (lat.m * lat.n)
    for k, c in enumerate(tf.cycles):
        for v in c:
            ids[v] = k
    return ids


def _row_plan(lat: Lattice, rows: Sequence[int], gaps: Sequence[int]) -> dict[int, int] | None:
    """Row insertions turning the base rows ``rows`` (cyclic order) into the given gaps."""
    n0 = lat.n
    k = len(rows)
    plan: dict[int, int] = {}
    modes = None
    for t in range(k):
        a, b = rows[t], rows[(t + 1) % k]
        base_gap = (b - a) % n0 or n0
        need = gaps[t] - base_gap
        if need < 0:
            return None
        if need == 0:
            continue
        if modes is None:
            modes = [lat.row_mode(r) for r in range(n0)]
        arc = [(a + s) % n0 for s in range(base_gap)]
        pick = next((r for r in arc if modes[r] == ANY), None)
        if pick is None and need % 2 == 0:
            pick = next((r for r in arc if modes[r] == EVEN), None)
        if pick is None:
            return None
        plan[pick] = need
    return plan


def _row_tuples(n0: int, k: int) -> Iterator[tuple[int, ...]]:
    """Base rows in cyclic order starting anywhere (r0 < r1 < ... after rotation)."""
    if k == 2:
        for a in range(n0):
            for s in range(1, n0):
                yield (a, (a + s) % n0)
    else:
        for a in range(n0):
            for s1 in range(1, n0 - 1):
                for s2 in range(s1 + 1, n0):
                    yield (a, (a + s1) % n0, (a + s2) % n0)


def fit(t: PatternTemplate, M: int, N: int, gaps: Sequence[int],
        allowed_cols: Sequence[int] | None = None) -> tuple[Lattice, list[tuple[int, int]]] | None:
    """Expand ``t`` to M columns and N rows separating a column of targets with these gaps."""
    k = len(gaps)
    if len(t.cycles) != k or M < t.m or N < t.n:
        return None
    rows_fixed = t.rows_fixed or (t.topology == "torus" and t.ell != 0)
    if rows_fixed and N != t.n:
        return None
    base = t.base
    orders = _gap_orders(gaps)
    dcols = M - t.m

    def check(lat, col, rows):
        ids = _cycle_ids(lat)
        got = {ids[col * lat.n + r] for r in rows}
        return len(got) == k

    def col_ok(p):
        return allowed_cols is None or p in allowed_cols

    # columns first: targets may sit on inserted columns
    bounds = _column_boundaries(t, base)
    for vec in _column_vectors(base, bounds, dcols):
        ce = _apply_columns(base, vec)
        ids = _cycle_ids(ce)
        for p in range(ce.m):
            if not col_ok(p):
                continue
            for rows in _row_tuples(t.n, k):
                if len({ids[p * ce.n + r] for r in rows}) != k:
                    continue
                for order in orders:
                    plan = _row_plan(ce, rows, order) if not rows_fixed else (
                        {} if all(((rows[(i + 1) % k] - rows[i]) % t.n or t.n) == order[i] for i in range(k)) else None)
                    if plan is None:
                        continue
                    final = _apply_rows(ce, plan)
                    new_rows = [r + sum(c for b, c in plan.items() if b < r) for r in rows]
                    if check(final, p, new_rows):
                        return final, [(p, r) for r in new_rows]
    if rows_fixed:
        return None
    # rows first: targets on base columns
    for p0 in range(t.m):
        for rows in _row_tuples(t.n, k):
            ids = _cycle_ids(base)
            if len({ids[p0 * t.n + r] for r in rows}) != k:
                continue
            for order in orders:
                plan = _row_plan(base, rows, order)
                if not plan:
                    continue
                re = _apply_rows(base, plan)
                new_rows = [r + sum(c for b, c in plan.items() if b < r) for r in rows]
                for vec in _column_vectors(re, _column_boundaries(t, re), dcols):
                    p = p0 + sum(c for b, c in vec.items() if b < p0)
                    if not col_ok(p):
                        continue
                    final = _apply_columns(re, vec)
                    if check(final, p, new_rows):
                        return final, [(p, r) for r in new_rows]
    return None


def templates_for(prefix: str) -> list[PatternTemplate]:
    return [t for name, t in sorted(load_templates().items()) if name.startswith(prefix)]


@lru_cache(maxsize=4096)
def fit_cylinder_pair(k: int, n: int, p: int, d: int):
    """Two targets (p, 0), (p, d) of P_k x C_n; returns (lattice, positions) or None."""
    allowed = (p, k - 1 - p)
    for t in templates_for("cylinder_pair"):
        got = fit(t, k, n, (d, n - d), allowed)
        if got is not None:
            return got[0], got[1]
    return None
