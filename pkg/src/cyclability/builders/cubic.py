"""3-valent families: Q3, K4, K2 x C_n and the Moebius ladders circ(2r; +-1, r)."""
from __future__ import annotations

from typing import Sequence

from ..algebra.classify import StructureClass
from ..graphs import BadParameters, build_circulant
from ..twofactor import TwoFactor
from .family import family, pull_back_in
from .grid import solve_family
from .verdict import Reason, Verdict

GRAY = (0, 1, 3, 2)


def cube_to_cylinder() -> list[int]:
    """Q3 vertex (bit mask) -> P_2 x C_4 vertex i*4 + j, with rows in Gray order."""
    perm = [0] * 8
    for i in range(2):
        for j in range(4):
            perm[i | GRAY[j] << 1] = i * 4 + j
    return perm


def ladder_factor(r: int, t: int) -> TwoFactor:
    """Two rectangles of circ(2r; +-1, r): vertices {0..t, r..r+t} and the rest."""
    n = 2 * r
    a = list(range(0, t + 1)) + list(range(r + t, r - 1, -1))
    b = list(range(t + 1, r)) + list(range(n - 1, r + t, -1))
    return TwoFactor.of([a, b])


def _moebius(r: int, targets: Sequence[int]) -> Verdict:
    n = 2 * r
    a, b = targets
    if r <= 3 or (a - b) % n == r:
        return Verdict.impossible(Reason.CUBIC)
    g = build_circulant(n, {1, r})
    auts = [tuple((x + c) % n for x in range(n)) for c in range(n)]
    auts += [tuple((c - x) % n for x in range(n)) for c in range(n)]
    for t in range(1, r - 2):
        tf = pull_back_in(g, auts, ladder_factor(r, t), targets)
        if tf is not None:
            return Verdict.witness(tf)
    raise RuntimeError(f"no ladder split for {targets} on circ({n}; 1, {r})")


def separate2_cubic(cls: StructureClass, a: int, b: int) -> Verdict:
    """Pair verdict for a 3-valent class; a, b are vertices of ``cls.family_graph()``."""
    if cls.valency != 3:
        raise BadParameters(f"{cls.tag} is not 3-valent")
    if a == b:
        raise BadParameters("targets must be distinct")
    tag = cls.tag
    if tag == "k4":
        return Verdict.impossible(Reason.CUBIC)
    if tag == "cubic_circulant":
        n = cls.params["n"]
        if n == 4:
            return Verdict.impossible(Reason.CUBIC)
        return _moebius(n // 2, (a, b))
    if tag == "q3":
        perm = cube_to_cylinder()
        tf = solve_family(family(2, 4, None), (perm[a], perm[b]))
        inv = [0] * 8
        for v, w in enumerate(perm):
            inv[w] = v
        return Verdict.witness(tf.relabel(inv))
    n = cls.params["n"]
    if n == 3 and a // 3 == b // 3:
        return Verdict.impossible(Reason.CUBIC)
    return Verdict.witness(solve_family(family(2, n, None), (a, b)))
