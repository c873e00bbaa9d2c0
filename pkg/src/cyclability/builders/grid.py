"""Separating 2-factors of the pseudo-Cartesian products C_m x_l C_n.

Every construction builds a valid 2-factor for some placement of the target
shape and leaves the exact placement to :func:`family.pull_back`, which finds
an automorphism carrying the targets onto it.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Iterator, Sequence

from ..algebra.classify import SPECIAL_TAU
from ..graphs import BadParameters, build_path_cycle
from ..twofactor import TwoFactor, PreconditionViolated, shift_jump, validate
from .family import GridFamily, family, hamilton_band, pull_back, shift_tau
from .fitting import fit, fit_cylinder_pair, templates_for
from .verdict import Reason, Verdict

Coord = tuple[int, int]


class ConstructionGap(RuntimeError):
    """No construction applied to a target set expected to be separable."""


def hamilton_pmcn(m: int, n: int) -> TwoFactor:
    """A single Hamilton cycle of P_m x C_n (vertex i*n + j)."""
    if m < 1 or n < 3:
        raise BadParameters(f"P_{m} x C_{n} needs m >= 1 and n >= 3")
    return TwoFactor.of([[i * n + j for i, j in hamilton_band(m, n)]])


def _tf(fam: GridFamily, cycles: Sequence[Sequence[Coord]]) -> TwoFactor:
    return TwoFactor.of([[fam.v(i, j) for i, j in c] for c in cycles])


def _ham_bands(fam: GridFamily, spans: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    out = []
    for start, k in spans:
        out += fam.embed([hamilton_band(k, fam.n)], fam.band(start, k))
    return out


def _rectangle(a: int, b: int, r0: int, r1: int) -> list[Coord]:
    """Cycle around columns a..b on two adjacent rows r0, r1."""
    return [(i, r0) for i in range(a, b + 1)] + [(i, r1) for i in range(b, a - 1, -1)]


def _column_bands(fam: GridFamily, cols: Sequence[int]) -> TwoFactor:
    """One Hamiltonian band per target column, each starting at its column."""
    cols = sorted(cols)
    m = fam.m
    spans = [(c, (cols[(t + 1) % len(cols)] - c) % m or m) for t, c in enumerate(cols)]
    return TwoFactor.of(_ham_bands(fam, spans))


@lru_cache(maxsize=None)
def _lists() -> dict:
    text = resources.files("cyclability.data").joinpath("three_column_lists.json").read_text()
    return json.loads(text)


def _reflect_rows(fam: GridFamily, tf: TwoFactor) -> TwoFactor:
    n = fam.n
    return tf.relabel([i * n + (-j) % n for i in range(fam.m) for j in range(n)])


def _row_variants(cycles: Sequence[Sequence[Coord]], n: int) -> Iterator[list[list[Coord]]]:
    """Band 2-factor under every row rotation and reflection (band automorphisms)."""
    for flip in (1, -1):
        for c in range(n):
            yield [[(i, (flip * j + c) % n) for i, j in cyc] for cyc in cycles]


def _cyclic_gaps(rows: Sequence[int], n: int) -> tuple[int, ...]:
    rows = sorted(rows)
    k = len(rows)
    return tuple((rows[(t + 1) % k] - rows[t]) % n or n for t in range(k))


# -- two targets ---------------------------------------------------------------

def _pair_same_column_n3(fam: GridFamily, targets) -> Iterator[TwoFactor]:
    m, ell = fam.m, fam.ell
    if ell == 0:
        # row through the first target, the other two rows as one ladder ring
        yield _tf(fam, [[(i, 0) for i in range(m)], _rectangle(0, m - 1, 1, 2)])
    # square on rows {0, 2} of columns 0-1; the second cycle runs along row 1
    # then winds once around every remaining column
    if m == 3 and ell == 0:
        return
    steps = m - 2
    for signs in range(1 << steps):
        ds = [1 if signs >> t & 1 else -1 for t in range(steps)]
        if (1 - sum(ds)) % 3 != (1 - ell) % 3:
            continue
        cyc = [(0, 1), (1, 1)]
        row = 1
        for t, d in enumerate(ds):
            c = t + 2
            cyc += [(c, row), (c, row + d), (c, row + 2 * d)]
            row = (row + 2 * d) % 3
        yield _tf(fam, [[(0, 0), (0, 2), (1, 2), (1, 0)], cyc])
        return


def _pair_same_column(fam: GridFamily, targets) -> Iterator[TwoFactor]:
    n = fam.n
    (p, r0), (_, r1) = (fam.coord(t) for t in targets)
    if n == 3:
        yield from _pair_same_column_n3(fam, targets)
        return
    d = min((r1 - r0) % n, (r0 - r1) % n)
    got = fit_cylinder_pair(fam.m, n, 0, d)
    if got is not None:
        for cyc in _row_variants(got[0].coord_cycles(), n):
            yield _tf(fam, cyc)


# -- three targets ---------------------------------------------------------------

def _two_columns(fam: GridFamily, targets) -> Iterator[TwoFactor]:
    m, n = fam.m, fam.n
    cs = [fam.coord(t) for t in targets]
    cols = [c for c, _ in cs]
    p = next(c for c in cols if cols.count(c) == 2)
    q = next(c for c in cols if cols.count(c) == 1)
    pair_rows = [r for c, r in cs if c == p]
    z_row = next(r for c, r in cs if c == q)
    if n >= 4:
        k = m - 1
        pos = (p - q - 1) % m
        d = min((pair_rows[1] - pair_rows[0]) % n, (pair_rows[0] - pair_rows[1]) % n)
        got = fit_cylinder_pair(k, n, pos, d)
        if got is None:
            return
        column = tuple(fam.v(q, j) for j in range(n))
        for var in _row_variants(got[0].coord_cycles(), n):
            yield TwoFactor.of(fam.embed(var, fam.band(q + 1, k)) + [column])
        return
    if fam.ell == 0:
        if z_row not in pair_rows:
            yield _tf(fam, [[(i, r) for i in range(m)] for r in range(3)])
            return
        if m < 4:
            return
        # row of the lone pair target; the other two rows split in two arcs
        other = next(r for r in pair_rows if r != z_row)
        rest = [r for r in range(3) if r != other]
        for start in range(m):
            for a in range(2, m - 1):
                arc = {(start + t) % m for t in range(a)}
                if (p in arc) == (q in arc):
                    continue
                yield _tf(fam, [[(i, other) for i in range(m)],
                                _arc_rectangle(start, a, m, rest),
                                _arc_rectangle(start + a, m - a, m, rest)])
                return
        return
    if m < 5:
        return
    ell = fam.ell
    # column 0 and row 1 form one cycle; rows {0, 2} of columns 1..m-1 split
    # into two rectangles
    long = [(i, 1) for i in range(m)] + [(0, 1 + ell), (0, 1 + 2 * ell)]
    for a in range(2, m - 2):
        yield _tf(fam, [long, _rectangle(1, a, 0, 2), _rectangle(a + 1, m - 1, 0, 2)])


def _arc_rectangle(start: int, k: int, m: int, rows: Sequence[int]) -> list[Coord]:
    cols = [(start + t) % m for t in range(k)]
    return [(c, rows[0]) for c in cols] + [(c, rows[1]) for c in reversed(cols)]


def _one_column_m3(fam: GridFamily, rows: Sequence[int]) -> Iterator[TwoFactor]:
    n, ell = fam.n, fam.ell
    gaps = sorted(_cyclic_gaps(rows, n))
    name = {4: "rows4_consecutive"}.get(n) or ("rows5_consecutive" if gaps[1] == 1 else "rows5_gap")
    entry = _lists()[name]["by_jump"]
    if str(ell) in entry:
        yield _tf(fam, [[tuple(p) for p in c] for c in entry[str(ell)]])


def _orders(g: Sequence[int]) -> list[tuple[int, ...]]:
    out = []
    for seq in (tuple(g), tuple(reversed(g))):
        for r in range(3):
            out.append(seq[r:] + seq[:r])
    return out


def _cylinder_cycle(c0: int, c1: int, n: int, skip: int) -> list[Coord]:
    """Hamilton cycle of columns c0..c1 using every vertical edge of column c1
    except (skip, skip + 1) when c0 < c1."""
    outer = [(c1, (skip + 1 + t) % n) for t in range(n)]
    if c0 == c1:
        return outer
    inner = _cut(_cylinder_cycle(c0, c1 - 1, n, skip + 1), (c1 - 1, skip % n), (c1 - 1, (skip + 1) % n))
    return outer + inner


def _cut(cycle: Sequence[Coord], a: Coord, b: Coord) -> list[Coord]:
    """Drop the cycle edge ab: a Hamilton path of the cycle from a to b."""
    i = cycle.index(a)
    seq = list(cycle[i:]) + list(cycle[:i])
    if seq[1] == b:
        seq = [seq[0]] + seq[:0:-1]
    assert seq[-1] == b
    return seq


def _column_formula(m: int, n: int, gaps: Sequence[int]) -> list[list[Coord]] | None:
    """Torus 2-factor of C_m x C_n separating rows 0, j, k of column 0 with no
    edge between columns 1 and 2. Columns 2..m-1 are absorbed by one cycle."""
    g1, g2, g3 = gaps
    k = g1 + g2
    far = m - 1
    if (g2 >= 2 and g3 >= 2 and k >= 4) or (g1, g2) == (1, 2):
        if (g1, g2) == (1, 2):
            k = 4
            top = (n - 1, 4)
        else:
            top = (n - 1, k)
        ring = _cut(_cylinder_cycle(2, far, n, k + 1), (far, k % n), (far, k - 1))
        small = ([(0, r) for r in range(1, k - 1)] + [(1, r) for r in range(k - 2, 0, -1)]
                 if (g1, g2) != (1, 2) else [(0, 1), (0, 2), (1, 2), (1, 1)])
        return [
            [(0, 0), (1, 0)] + [(1, r) for r in range(top[0], top[1], -1)]
            + [(0, r) for r in range(top[1] + 1, n)],
            small,
            [(0, k - 1), (1, k - 1), (1, k), (0, k)] + ring,
        ]
    if (g1, g2) == (1, 1):
        ring = _cut(_cylinder_cycle(2, far, n, 5), (far, 4), (far, 3))
        ring = ring[:ring.index((far, 2))]
        return [
            [(0, 0), (1, 0)] + [(1, r) for r in range(n - 1, 4, -1)] + [(0, r) for r in range(5, n)],
            [(0, 1), (1, 1), (1, 2), (1, 3), (1, 4), (0, 4)] + ring,
            [(0, 2), (0, 3), (far, 3), (far, 2)],
        ]
    return None


def _one_column_formula(fam: GridFamily, rows: Sequence[int]) -> Iterator[TwoFactor]:
    m, n = fam.m, fam.n
    for order in _orders(_cyclic_gaps(rows, n)):
        base = _column_formula(m, n, order)
        if base is None:
            continue
        # move the empty boundary 1|2 to m-2|m-1, where shift_jump expects it
        tf0 = TwoFactor.of([[((i + m - 3) % m) * n + j for i, j in c] for c in base])
        yield shift_jump(tf0, m, n, fam.ell)
        return


_GAP_CLASS = {0: "column_triple_spread", 1: "column_triple_adjacent_pair", 2: "column_triple_consecutive"}


def _one_column_templates(fam: GridFamily, rows: Sequence[int]) -> Iterator[TwoFactor]:
    m, n, ell = fam.m, fam.n, fam.ell
    gaps = _cyclic_gaps(rows, n)
    prefix = _GAP_CLASS[sum(1 for x in gaps if x == 1)]
    for t in templates_for(prefix):
        if t.rows_fixed:
            if t.n != n or t.m > m:
                continue
            if t.ell == ell:
                flip = False
            elif (n - t.ell) % n == ell:
                flip = True
            else:
                continue
            got = fit(t, m, n, gaps)
            if got is None:
                continue
            tf = got[0].two_factor()
            yield _reflect_rows(fam, tf) if flip else tf
            continue
        got = fit(t, m, n, gaps)
        if got is None:
            continue
        lat = got[0]
        free = [c for c in range(len(lat.H)) if not any(lat.H[c])]
        if not free:
            continue
        c = free[0]
        perm = [((i - c - 2) % m) * n + j for i in range(m) for j in range(n)]
        tf = lat.two_factor().relabel(perm)
        try:
            yield shift_jump(tf, m, n, ell)
        except PreconditionViolated:
            continue


def _one_column_special(fam: GridFamily) -> Iterator[TwoFactor]:
    """Separates rows {0, 1, 2} and {0, 1, 3} of column 0 for the reflection-closed product."""
    m = fam.m
    yield _tf(fam, [
        [(0, 0), (1, 0)] + [(i, 3) for i in range(1, m)],
        [(0, 1), (1, 1)] + [(i, 2) for i in range(1, m)],
        [(0, 3)] + [(i, 0) for i in range(m - 1, 1, -1)] + [(i, 1) for i in range(2, m)] + [(0, 2)],
    ])


def _one_column(fam: GridFamily, targets) -> Iterator[TwoFactor]:
    m, n = fam.m, fam.n
    rows = [fam.coord(t)[1] for t in targets]
    if fam.ell is None:
        yield from _one_column_special(fam)
        return
    if n == 3:
        if fam.ell == 0:
            yield _tf(fam, [[(i, r) for i in range(m)] for r in range(3)])
        return
    if m < 3:
        return
    if n >= 6:
        yield from _one_column_formula(fam, rows)
    elif m == 3:
        yield from _one_column_m3(fam, rows)
    else:
        yield from _one_column_templates(fam, rows)


# -- characterization --------------------------------------------------------------

def triple_reason(m: int, n: int, ell: int, coords: Sequence[Coord]) -> Reason | None:
    """Reason no separating 2-factor exists, or None when one does."""
    cols = {c for c, _ in coords}
    rows = [r for _, r in coords]
    if n == 3:
        if ell == 0:
            if m == 3 and len(cols) < 3 and len(set(rows)) < 3:
                return Reason.THREE_ROWS
            return None
        if m <= 4 and len(cols) < 3:
            return Reason.THREE_ROWS
        if len(cols) == 1:
            return Reason.THREE_ROWS
        return None
    if m == 3 and n == 4 and ell == 2 and len(cols) == 1:
        return Reason.THREE_COLUMNS
    return None


# -- entry points -------------------------------------------------------------------

def _check_grid(m, n, ell, coords):
    if m < 3 or n < 3:
        raise BadParameters(f"C_{m} x_l C_{n} needs m, n >= 3")
    for i, j in coords:
        if not (0 <= i < m and 0 <= j < n):
            raise BadParameters(f"vertex ({i}, {j}) outside {m} x {n}")
    if len(set(coords)) != len(coords):
        raise BadParameters("targets must be distinct")


def solve_family(fam: GridFamily, targets: Sequence[int]) -> TwoFactor | None:
    """Witness for the targets on a grid family, or None if no construction applies."""
    targets = tuple(sorted(targets))
    k = len(targets)
    cols = sorted({fam.coord(t)[0] for t in targets})
    if k == 1:
        cands: Iterator[TwoFactor] = iter([TwoFactor.of(_ham_bands(fam, [(0, fam.m)]))])
    elif len(cols) == k:
        cands = iter([_column_bands(fam, cols)])
    elif k == 2:
        cands = _pair_same_column(fam, targets)
    elif len(cols) == 2:
        cands = _two_columns(fam, targets)
    else:
        cands = _one_column(fam, targets)
    for tf in cands:
        got = pull_back(fam, tf, targets)
        if got is not None:
            return got
    return None


def grid_family(m: int, n: int, ell: int) -> GridFamily:
    return family(m, n, shift_tau(n, ell % n))


def separate_special(m: int, coords: Sequence[Coord]) -> Verdict:
    """Targets on the product closed by u_{m-1,j} ~ u_{0,3-j} (four rows)."""
    coords = [tuple(c) for c in coords]
    _check_grid(m, 4, 0, coords)
    if len(coords) not in (1, 2, 3):
        raise BadParameters("one to three targets expected")
    fam = family(m, 4, SPECIAL_TAU)
    tf = solve_family(fam, [fam.v(i, j) for i, j in coords])
    if tf is None:
        raise ConstructionGap(f"no construction for {coords} on the special product with m={m}")
    return Verdict.witness(tf)


def separate_grid(m: int, n: int, ell: int, coords: Sequence[Coord]) -> Verdict:
    coords = [tuple(c) for c in coords]
    _check_grid(m, n, ell, coords)
    ell %= n
    if len(coords) == 3:
        reason = triple_reason(m, n, ell, coords)
        if reason is not None:
            return Verdict.impossible(reason)
    fam = grid_family(m, n, ell)
    tf = solve_family(fam, [fam.v(i, j) for i, j in coords])
    if tf is None:
        raise ConstructionGap(f"no construction for {coords} on C_{m} x_{ell} C_{n}")
    return Verdict.witness(tf)


def separate2_grid(m: int, n: int, ell: int, a: Coord, b: Coord) -> Verdict:
    return separate_grid(m, n, ell, [a, b])


def separate3_grid(m: int, n: int, ell: int, targets: Sequence[Coord]) -> Verdict:
    if len(targets) != 3:
        raise BadParameters("three targets expected")
    return separate_grid(m, n, ell, targets)


def check_cylinder(tf: TwoFactor, m: int, n: int) -> bool:
    return validate(build_path_cycle(m, n), tf) is None
