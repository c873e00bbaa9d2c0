"""Base 2-factors on small grids and the line-insertion operator.

A template is a 2-factor of either P_m x C_n ("cylinder") or C_m x_l C_n
("torus") stored as cycles of (column, row) pairs.  Extra columns (rows) are
inserted at a boundary between two adjacent columns (rows):

* ``any``: every edge crossing the boundary is used, so each one is
  subdivided and any number of lines can be inserted.
* ``even``: some crossing edges are used.  Each maximal run of unused lines is
  swept by a zigzag detour of an adjacent used edge, which needs an even
  number of inserted lines.
* ``none``: nothing crosses the boundary; insertion is refused.

Modes are derived from the current 2-factor when an insertion is applied.
One axis is expanded completely before the other (rows first by default), so
an ``any`` boundary of the second axis usually degrades to ``even`` once
lines of the first axis were added.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .graphs import Graph, build_path_cycle, build_pseudo
from .twofactor import TwoFactor, validate


class ExpansionError(ValueError):
    pass


class ParityViolation(ExpansionError):
    pass


class NegativeCount(ExpansionError):
    pass


class NotInsertable(ExpansionError):
    pass


ANY, EVEN, NONE = "any", "even", "none"


class Lattice:
    """Edge-set view of a 2-factor on a grid.

    ``H[i][j]`` is the edge u_{i,j} u_{i+1,j}; for a wrapped first axis the
    last entry is the closing edge u_{m-1,j} u_{0,j+ell}.  ``V[i][j]`` is the
    edge u_{i,j} u_{i,j+1}.
    """

    __slots__ = ("m", "n", "wrap_i", "wrap_j", "ell", "H", "V")

    def __init__(self, m, n, wrap_i, wrap_j, ell, H, V):
        self.m, self.n = m, n
        self.wrap_i, self.wrap_j, self.ell = wrap_i, wrap_j, ell
        self.H, self.V = H, V

    @classmethod
    def from_cycles(cls, m, n, wrap_i, ell, cycles: Iterable[Sequence[tuple[int, int]]], wrap_j=True):
        H = [[False] * n for _ in range(m if wrap_i else m - 1)]
        V = [[False] * (n if wrap_j else n - 1) for _ in range(m)]
        for cyc in cycles:
            for k, (i, j) in enumerate(cyc):
                i2, j2 = cyc[(k + 1) % len(cyc)]
                cls._mark(H, V, m, n, wrap_i, wrap_j, ell, (i, j), (i2, j2))
        return cls(m, n, wrap_i, wrap_j, ell, H, V)

    @staticmethod
    def _mark(H, V, m, n, wrap_i, wrap_j, ell, a, b):
        (i, j), (i2, j2) = a, b
        if i == i2:
            if (j + 1) % n == j2 and (wrap_j or j + 1 < n):
                V[i][j] = True
                return
            if (j2 + 1) % n == j and (wrap_j or j2 + 1 < n):
                V[i][j2] = True
                return
        elif j == j2 and abs(i - i2) == 1:
            H[min(i, i2)][j] = True
            return
        if wrap_i:
            if i == m - 1 and i2 == 0 and j2 == (j + ell) % n:
                H[m - 1][j] = True
                return
            if i2 == m - 1 and i == 0 and j == (j2 + ell) % n:
                H[m - 1][j2] = True
                return
        raise ExpansionError(f"{a}-{b} is not a grid edge")

    def copy(self) -> "Lattice":
        return Lattice(self.m, self.n, self.wrap_i, self.wrap_j, self.ell,
                       [r[:] for r in self.H], [r[:] for r in self.V])

    def transpose(self) -> "Lattice":
        if self.wrap_i and self.ell:
            raise NotInsertable("rows cannot be inserted when the jump is nonzero")
        H = [[self.V[i][j] for i in range(self.m)] for j in range(len(self.V[0]))]
        V = [[self.H[i][j] for i in range(len(self.H))] for j in range(self.n)]
        return Lattice(self.n, self.m, self.wrap_j, self.wrap_i, 0, H, V)

    def edges(self) -> list[tuple[int, int]]:
        m, n = self.m, self.n
        out = []
        for i, row in enumerate(self.H):
            for j, used in enumerate(row):
                if used:
                    if i == m - 1:
                        out.append((i * n + j, (j + self.ell) % n))
                    else:
                        out.append((i * n + j, (i + 1) * n + j))
        for i, col in enumerate(self.V):
            for j, used in enumerate(col):
                if used:
                    out.append((i * n + j, i * n + (j + 1) % n))
        return out

    def two_factor(self) -> TwoFactor:
        return TwoFactor.from_edges(self.m * self.n, self.edges())

    def coord_cycles(self) -> list[list[tuple[int, int]]]:
        return [[divmod(v, self.n) for v in c] for c in self.two_factor().cycles]

    def graph(self) -> Graph:
        if self.wrap_i:
            return build_pseudo(self.m, self.n, self.ell)
        return build_path_cycle(self.m, self.n)

    # -- column insertion -------------------------------------------------

    def _line_runs(self, used: Sequence[bool]):
        """Assign each run of unused lines to an adjacent used line.

        Returns {used line: (direction, run length)} or None if impossible.
        """
        n = len(used)
        if not any(used):
            return None
        if all(used):
            return {}
        runs = []
        if self.wrap_j:
            start = next(j for j in range(n) if used[j])
            j = start
            order = [(start + t) % n for t in range(n)]
            t = 0
            while t < n:
                if not used[order[t]]:
                    s = t
                    while t < n and not used[order[t]]:
                        t += 1
                    runs.append((order[s - 1], +1, t - s))
                else:
                    t += 1
            return {line: (d, q) for line, d, q in runs}
        # linear axis: each run may hang off its lower or upper neighbour
        t = 0
        while t < n:
            if not used[t]:
                s = t
                while t < n and not used[t]:
                    t += 1
                opts = []
                if s > 0:
                    opts.append((s - 1, +1, t - s))
                if t < n:
                    opts.append((t, -1, t - s))
                runs.append(opts)
            else:
                t += 1

        def place(k, taken):
            if k == len(runs):
                return {}
            for line, d, q in runs[k]:
                if line not in taken:
                    rest = place(k + 1, taken | {line})
                    if rest is not None:
                        rest[line] = (d, q)
                        return rest
            return None

        return place(0, frozenset())

    def column_mode(self, c: int) -> str:
        used = self.H[c]
        if all(used):
            return ANY
        return EVEN if self._line_runs(used) is not None else NONE

    def insert_columns(self, c: int, k: int) -> "Lattice":
        if k < 0:
            raise NegativeCount(f"column count {k} at boundary {c}")
        if k == 0:
            return self
        if c == self.m - 1 and not self.wrap_i or c >= len(self.H) or c < 0:
            raise NotInsertable(f"no column boundary {c}")
        if c == self.m - 1 and self.ell:
            raise NotInsertable("columns cannot be inserted across a jumped closing boundary")
        mode = self.column_mode(c)
        if mode == NONE:
            raise NotInsertable(f"no edge crosses column boundary {c}")
        if mode == EVEN and k % 2:
            raise ParityViolation(f"column boundary {c} only takes an even count, got {k}")
        n = self.n
        vlen = len(self.V[0])
        used = self.H[c]
        runs = self._line_runs(used) if mode == EVEN else {}
        newH = [[False] * n for _ in range(k + 1)]
        newV = [[False] * vlen for _ in range(k)]
        for j in range(n):
            if not used[j]:
                continue
            if j not in runs:
                for t in range(k + 1):
                    newH[t][j] = True
                continue
            d, q = runs[j]
            far = (j + d * q) % n
            for t in range(k):
                for s in range(q):
                    a = (j + d * s) % n
                    newV[t][a if d > 0 else (a - 1) % n] = True
            newH[0][j] = True
            newH[k][j] = True
            for t in range(1, k):
                newH[t][far if t % 2 else j] = True
        H = self.H[:c] + newH + self.H[c + 1:]
        V = self.V[:c + 1] + newV + self.V[c + 1:]
        return Lattice(self.m + k, n, self.wrap_i, self.wrap_j, self.ell, H, V)

    def row_mode(self, r: int) -> str:
        return self.transpose().column_mode(r)

    def insert_rows(self, r: int, k: int) -> "Lattice":
        if k == 0:
            return self
        return self.transpose().insert_columns(r, k).transpose()


@dataclass(frozen=True)
class ExpansionGroup:
    name: str
    axis: str  # "col" or "row"
    boundary: int
    mode: str


@dataclass(frozen=True)
class PatternTemplate:
    name: str
    m: int
    n: int
    topology: str  # "cylinder" | "torus"
    ell: int
    cycles: tuple[tuple[tuple[int, int], ...], ...]
    anchors: Mapping[str, tuple[int, int]] = field(default_factory=dict)
    reserved: int | None = None  # column boundary that must stay unused
    rows_fixed: bool = False
    note: str = ""

    @property
    def base(self) -> Lattice:
        return Lattice.from_cycles(self.m, self.n, self.topology == "torus", self.ell, self.cycles)

    def groups(self) -> list[ExpansionGroup]:
        lat = self.base
        out = []
        for c in range(len(lat.H)):
            if c == self.reserved or (c == self.m - 1 and self.ell):
                continue
            mode = lat.column_mode(c)
            if mode != NONE:
                out.append(ExpansionGroup(f"col:{c}", "col", c, mode))
        if not self.rows_fixed and not (self.topology == "torus" and self.ell):
            for r in range(self.n):
                mode = lat.row_mode(r)
                if mode != NONE:
                    out.append(ExpansionGroup(f"row:{r}", "row", r, mode))
        return out

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "m": self.m,
            "n": self.n,
            "topology": self.topology,
            "ell": self.ell,
            "cycles": [[list(p) for p in c] for c in self.cycles],
            "anchors": {k: list(v) for k, v in self.anchors.items()},
            "groups": [{"name": g.name, "mode": g.mode} for g in self.groups()],
        }
        if self.reserved is not None:
            out["reserved"] = self.reserved
        if self.rows_fixed:
            out["rows_fixed"] = True
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "PatternTemplate":
        t = cls(
            name=data["name"],
            m=data["m"],
            n=data["n"],
            topology=data["topology"],
            ell=data.get("ell", 0),
            cycles=tuple(tuple((int(p[0]), int(p[1])) for p in c) for c in data["cycles"]),
            anchors={k: (int(v[0]), int(v[1])) for k, v in data.get("anchors", {}).items()},
            reserved=data.get("reserved"),
            rows_fixed=bool(data.get("rows_fixed", False)),
            note=data.get("note", ""),
        )
        derived = {g.name: g.mode for g in t.groups()}
        rank = {NONE: 0, EVEN: 1, ANY: 2}
        for g in data.get("groups", []):
            if rank[g["mode"]] > rank[derived.get(g["name"], NONE)]:
                raise ExpansionError(f"{t.name}: group {g['name']} declared {g['mode']} but supports {derived.get(g['name'], NONE)}")
        return t


@dataclass(frozen=True)
class Expansion:
    template: PatternTemplate
    lattice: Lattice
    two_factor: TwoFactor
    anchors: Mapping[str, tuple[int, int]]

    @property
    def m(self) -> int:
        return self.lattice.m

    @property
    def n(self) -> int:
        return self.lattice.n


def _split(insertions: Mapping[str, int]) -> tuple[dict[int, int], dict[int, int]]:
    cols, rows = {}, {}
    for name, k in insertions.items():
        axis, _, b = name.partition(":")
        if axis not in ("col", "row") or not b.lstrip("-").isdigit():
            raise ExpansionError(f"bad group name {name!r}")
        if k < 0:
            raise NegativeCount(f"{name}: {k}")
        (cols if axis == "col" else rows)[int(b)] = k
    return cols, rows


def expand(template: PatternTemplate, insertions: Mapping[str, int] | None = None,
           rows_first: bool = True) -> Expansion:
    cols, rows = _split(insertions or {})
    lat = template.base
    if template.reserved in cols and cols[template.reserved]:
        raise NotInsertable(f"{template.name}: boundary {template.reserved} is reserved")
    if any(rows.values()) and (template.rows_fixed or (template.topology == "torus" and template.ell)):
        raise NotInsertable(f"{template.name}: row count is fixed")
    lat = _apply(lat, cols, rows, rows_first)
    anchors = {}
    for key, (i, j) in template.anchors.items():
        di = sum(k for c, k in cols.items() if c < i)
        dj = sum(k for r, k in rows.items() if r < j)
        anchors[key] = (i + di, j + dj)
    return Expansion(template, lat, lat.two_factor(), anchors)


def _apply(lat: Lattice, cols: Mapping[int, int], rows: Mapping[int, int], rows_first: bool) -> Lattice:
    # insert from the highest boundary down so lower indices stay put
    def do_cols(lat):
        for c in sorted(cols, reverse=True):
            lat = lat.insert_columns(c, cols[c])
        return lat

    def do_rows(lat):
        for r in sorted(rows, reverse=True):
            lat = lat.insert_rows(r, rows[r])
        return lat

    return do_cols(do_rows(lat)) if rows_first else do_rows(do_cols(lat))


def random_insertions(template: PatternTemplate, rng: random.Random, max_count: int = 4,
                      rows_first: bool = True) -> dict[str, int]:
    """Sample an insertion vector that is legal for ``expand`` in the given order."""
    out: dict[str, int] = {}
    lat = template.base
    skip_cols = {template.reserved}
    if template.topology == "torus" and template.ell:
        skip_cols.add(template.m - 1)
    rows_ok = not (template.rows_fixed or (template.topology == "torus" and template.ell))

    def sample(lat, axis):
        count = len(lat.H) if axis == "col" else lat.n
        for b in range(count - 1, -1, -1):
            if axis == "col" and b in skip_cols:
                continue
            mode = lat.column_mode(b) if axis == "col" else lat.row_mode(b)
            if mode == NONE:
                continue
            k = rng.randint(0, max_count)
            if mode == EVEN:
                k -= k % 2
            if k:
                out[f"{axis}:{b}"] = k
                lat = lat.insert_columns(b, k) if axis == "col" else lat.insert_rows(b, k)
        return lat

    axes = ["row", "col"] if rows_first else ["col", "row"]
    for axis in axes:
        if axis == "row" and not rows_ok:
            continue
        lat = sample(lat, axis)
    return out


@lru_cache(maxsize=None)
def load_templates() -> dict[str, PatternTemplate]:
    out = {}
    for entry in sorted(resources.files("cyclability.data").joinpath("templates").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            data = json.loads(entry.read_text())
            for item in data if isinstance(data, list) else [data]:
                t = PatternTemplate.from_json(item)
                out[t.name] = t
    return out


def template(name: str) -> PatternTemplate:
    return load_templates()[name]


def check_template(t: PatternTemplate) -> None:
    lat = t.base
    bad = validate(lat.graph(), lat.two_factor())
    if bad:
        raise ExpansionError(f"{t.name}: {bad}")
    if t.reserved is not None and any(lat.H[t.reserved]):
        raise ExpansionError(f"{t.name}: reserved boundary {t.reserved} carries edges")
