"""Structure classification of 3- and 4-valent Abelian Cayley graphs.

Every verdict carries a certificate: ``certificate[G.index(g)]`` is the
vertex of the canonical family graph that the group element ``g`` maps to.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .groups import (
    Element,
    GroupSpec,
    element_order,
    generated_subgroup,
    is_involution,
    multiple_of,
    normalize_connection,
    validate_connection_set,
)

SPECIAL_TAU = (3, 2, 1, 0)

TAGS = (
    "q3",
    "k4",
    "k2_box_cn",
    "cubic_circulant",
    "order8_four_involutions",
    "q4",
    "pseudo_product",
    "special_y_box_k2",
    "circulant",
    "two_column_product",
)


@dataclass(frozen=True)
class StructureClass:
    tag: str
    params: dict[str, Any] = field(default_factory=dict)
    certificate: tuple[int, ...] = ()

    @property
    def valency(self) -> int:
        return 3 if self.tag in ("q3", "k4", "k2_box_cn", "cubic_circulant") else 4

    def family_graph(self):
        from .. import graphs

        p = self.params
        if self.tag == "q3":
            return graphs.build_hypercube(3)
        if self.tag == "q4":
            return graphs.build_hypercube(4)
        if self.tag == "k4":
            return graphs.build_circulant(4, {1, 2})
        if self.tag == "k2_box_cn":
            return graphs.build_path_cycle(2, p["n"])
        if self.tag == "cubic_circulant":
            return graphs.build_circulant(p["n"], {1, p["n"] // 2})
        if self.tag == "order8_four_involutions":
            return graphs.build_cayley(GroupSpec((2, 2, 2)), _order8_connection(p["variant"]))
        if self.tag == "pseudo_product":
            return graphs.build_pseudo(p["m"], p["n"], p["ell"])
        if self.tag == "special_y_box_k2":
            return graphs.build_pseudo_perm(p["m"], 4, SPECIAL_TAU)
        if self.tag == "circulant":
            return graphs.build_circulant(p["n"], {1, p["s"]})
        if self.tag == "two_column_product":
            return graphs.build_two_column(p["n"], p["tau"])
        raise ValueError(f"unknown tag {self.tag}")

    def to_dict(self, with_certificate: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"tag": self.tag}
        out.update({k: list(v) if isinstance(v, tuple) else v for k, v in self.params.items()})
        if with_certificate:
            out["certificate"] = list(self.certificate)
        return out


class InconsistentStructure(ValueError):
    """Raised when an input falls between the documented cases."""


def _order8_connection(variant: str) -> list[Element]:
    extra = (1, 1, 0) if variant == "sum2" else (1, 1, 1)
    return [(1, 0, 0), (0, 1, 0), (0, 0, 1), extra]


def _certificate(G: GroupSpec, mapping: dict[Element, int]) -> tuple[int, ...]:
    cert = [-1] * G.order
    for g, v in mapping.items():
        cert[G.index(g)] = v
    if -1 in cert or len(set(cert)) != G.order:
        raise InconsistentStructure("coset walk did not produce a bijection")
    return tuple(cert)


def _pick_pair_rep(G: GroupSpec, g: Element) -> Element:
    return min(g, G.neg(g))


def _span_coords(G: GroupSpec, basis: Sequence[Element]) -> dict[Element, int]:
    """Map each sum of a subset of an F2-basis to its bitmask."""
    out = {}
    for mask in range(1 << len(basis)):
        g = G.zero
        for b, e in enumerate(basis):
            if mask >> b & 1:
                g = G.add(g, e)
        out[g] = mask
    return out


def classify(G: GroupSpec, S: Iterable[Sequence[int]]) -> StructureClass:
    conn = normalize_connection(G, S)
    valency = validate_connection_set(G, conn)
    invs = [s for s in conn if is_involution(s, G)]
    others = sorted({_pick_pair_rep(G, s) for s in conn if not is_involution(s, G)})
    if valency == 3:
        return _classify_cubic(G, invs, others)
    if len(invs) == 4:
        return _classify_four_involutions(G, invs)
    if len(invs) == 2:
        return _classify_two_involutions(G, invs, others[0])
    return _classify_no_involutions(G, others[0], others[1])


def _classify_cubic(G, invs, others) -> StructureClass:
    if len(invs) == 3:
        a, b, c = invs
        if G.add(a, b) == c:
            return StructureClass("k4", {}, _certificate(G, {g: G.index(g) for g in G.elements()}))
        return StructureClass("q3", {}, _certificate(G, _span_coords(G, [a, b, c])))
    (a,), s = invs, others[0]
    r = element_order(s, G)
    mapping = {}
    if multiple_of(a, s, G) is not None:
        for k in range(r):
            mapping[G.scale(k, s)] = k
        return StructureClass("cubic_circulant", {"n": r}, _certificate(G, mapping))
    for e in range(2):
        for k in range(r):
            mapping[G.add(G.scale(e, a), G.scale(k, s))] = e * r + k
    return StructureClass("k2_box_cn", {"n": r}, _certificate(G, mapping))


def _classify_four_involutions(G, invs) -> StructureClass:
    if G.order == 16:
        return StructureClass("q4", {}, _certificate(G, _span_coords(G, invs)))
    # rank 3: pick the first independent triple, express the fourth in it
    for skip in range(3, -1, -1):
        basis = [g for i, g in enumerate(invs) if i != skip]
        coords = _span_coords(G, basis)
        if len(coords) == 8:
            break
    extra = invs[skip]
    mask = coords[extra]
    bits = [b for b in range(3) if mask >> b & 1]
    if len(bits) == 3:
        variant, order = "sum3", [0, 1, 2]
    else:
        variant = "sum2"
        order = bits + [b for b in range(3) if b not in bits]
    basis = [basis[b] for b in order]
    # canonical vertices are Z_2^3 in lexicographic order, first coordinate most significant
    relabel = {mask: ((mask & 1) << 2) | (mask & 2) | (mask >> 2 & 1) for mask in range(8)}
    mapping = {g: relabel[mask] for g, mask in _span_coords(G, basis).items()}
    return StructureClass("order8_four_involutions", {"variant": variant}, _certificate(G, mapping))


def _columns(G, m, n, cell) -> dict[Element, int]:
    return {cell(i, j): i * n + j for i in range(m) for j in range(n)}


def _classify_two_involutions(G, invs, s) -> StructureClass:
    a, b = invs
    r = element_order(s, G)
    if multiple_of(b, s, G) is not None:
        a, b = b, a
    if multiple_of(a, s, G) is not None:
        # a is the involution of <s>; columns are 4-cycles e, b, a+b, a
        half = G.scale(r // 2, s)
        m = r // 2

        def cell(i, j):
            base = G.scale(i, s)
            return [base, G.add(base, b), G.add(G.add(base, half), b), G.add(base, half)][j]

        mapping = _columns(G, m, 4, cell)
        if m < 3:
            return StructureClass("two_column_product", {"n": 4, "tau": SPECIAL_TAU}, _certificate(G, mapping))
        return StructureClass("special_y_box_k2", {"m": m}, _certificate(G, mapping))
    ab = G.add(a, b)
    if multiple_of(ab, s, G) is not None:
        m = r // 2

        def cell(i, j):
            base = G.scale(i, s)
            return [base, G.add(base, a), G.add(base, ab), G.add(base, b)][j]

        mapping = _columns(G, m, 4, cell)
        if m < 3:
            return StructureClass("two_column_product", {"n": 4, "tau": (2, 3, 0, 1)}, _certificate(G, mapping))
        return StructureClass("pseudo_product", {"m": m, "n": 4, "ell": 2}, _certificate(G, mapping))

    def cell(i, j):
        base = G.scale(i, s)
        return [base, G.add(base, a), G.add(base, ab), G.add(base, b)][j]

    return StructureClass("pseudo_product", {"m": r, "n": 4, "ell": 0}, _certificate(G, _columns(G, r, 4, cell)))


def _classify_no_involutions(G, a, b) -> StructureClass:
    N = G.order
    oa, ob = element_order(a, G), element_order(b, G)
    if oa == N and ob == N:
        k = multiple_of(b, a, G)
        s = min(k, N - k)
        mapping = {G.scale(j, a): j for j in range(N)}
        return StructureClass("circulant", {"n": N, "s": s}, _certificate(G, mapping))
    # columns are cosets of the generator with the larger index
    if N // ob > N // oa:
        a, b, oa, ob = b, a, ob, oa
    m, n = N // oa, oa
    crossing = G.scale(m, b)
    ell = multiple_of(crossing, a, G)
    if ell is None:
        raise InconsistentStructure("m*b does not land in <a>")

    def cell(i, j):
        return G.add(G.scale(i, b), G.scale(j, a))

    mapping = _columns(G, m, n, cell)
    if m < 3:
        tau = tuple((j + ell) % n for j in range(n))
        return StructureClass("two_column_product", {"n": n, "tau": tau}, _certificate(G, mapping))
    return StructureClass("pseudo_product", {"m": m, "n": n, "ell": ell}, _certificate(G, mapping))


def verify_certificate(G: GroupSpec, S: Iterable[Sequence[int]], cls: StructureClass) -> bool:
    """Full isomorphism check of the certificate against the family graph."""
    from ..graphs import build_cayley

    cay = build_cayley(G, S)
    fam = cls.family_graph()
    cert = cls.certificate
    if fam.n != cay.n or fam.edge_count != cay.edge_count or sorted(cert) != list(range(cay.n)):
        return False
    return all(fam.has_edge(cert[u], cert[v]) for u, v in cay.edges())
