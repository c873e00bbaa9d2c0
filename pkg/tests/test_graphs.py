import pytest
from hypothesis import given, settings, strategies as st

from cyclability.algebra import GroupSpec, NotGenerating
from cyclability.algebra.classify import SPECIAL_TAU
from cyclability.graphs import (
    BadParameters,
    Graph,
    NotAPermutation,
    build_cayley,
    build_circulant,
    build_hypercube,
    build_path_cycle,
    build_pseudo,
    build_pseudo_perm,
    build_two_column,
    export,
    import_json,
)


def regular(g: Graph, k: int) -> bool:
    return all(len(g.adj[v]) == k for v in range(g.n))


def test_path_cycle_examples():
    tri = build_path_cycle(1, 3)
    assert tri.n == 3 and tri.edge_count == 3
    g = build_path_cycle(3, 4)
    assert g.n == 12 and g.edge_count == 20
    assert regular(build_path_cycle(2, 5), 3)


def test_pseudo_examples():
    g = build_pseudo(3, 3, 0)
    assert g.n == 9 and g.edge_count == 18 and regular(g, 4)
    g = build_pseudo(4, 4, 2)
    assert g.has_edge(3 * 4 + 1, 0 * 4 + 3)
    g = build_pseudo(3, 4, 1)
    assert g.has_edge(2 * 4 + 3, 0)


@pytest.mark.parametrize("args", [(2, 4, 0), (3, 2, 0), (3, 4, 4), (3, 4, -1)])
def test_pseudo_rejects(args):
    with pytest.raises(BadParameters):
        build_pseudo(*args)


def test_pseudo_perm():
    assert build_pseudo_perm(4, 5, range(5)).edges() == build_pseudo(4, 5, 0).edges()
    assert build_pseudo_perm(4, 5, [2, 3, 4, 0, 1]).edges() == build_pseudo(4, 5, 2).edges()
    g = build_pseudo_perm(3, 4, SPECIAL_TAU)
    assert g.n == 12 and g.edge_count == 24
    with pytest.raises(NotAPermutation):
        build_pseudo_perm(3, 4, [0, 0, 1, 2])


def test_two_column_needs_fixed_point_free_tau():
    g = build_two_column(4, (2, 3, 0, 1))
    assert regular(g, 4)
    with pytest.raises(BadParameters):
        build_two_column(4, (0, 1, 2, 3))


def test_circulant_examples():
    g = build_circulant(6, {1, 3})
    assert regular(g, 3)
    g = build_circulant(7, {1, 2})
    assert regular(g, 4) and g.edge_count == 14
    assert regular(build_circulant(9, {1, 4}), 4)
    with pytest.raises(BadParameters):
        build_circulant(2, {1})


def test_cayley_examples():
    assert build_cayley(GroupSpec((7,)), [(1,), (6,), (2,), (5,)]).edges() == build_circulant(7, {1, 2}).edges()
    cube = build_cayley(GroupSpec((2, 2, 2)), [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert cube.edges() == build_hypercube(3).edges()
    with pytest.raises(NotGenerating):
        build_cayley(GroupSpec((4, 2)), [(2, 0), (0, 1), (2, 1)])


def test_export_json_sorted_and_round_trips():
    text = export(build_circulant(3, {1}))
    assert import_json(text).edges() == [(0, 1), (0, 2), (1, 2)]
    g = build_pseudo(3, 4, 0)
    back = import_json(export(g))
    assert back.n == g.n and back.edges() == g.edges()
    assert len(back.edges()) == 24


def test_export_dot():
    dot = export(build_path_cycle(1, 3), "dot")
    assert dot.startswith("graph") and dot.count("--") == 3


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 7), st.integers(3, 7), st.data())
def test_pseudo_rotations_are_automorphisms(m, n, data):
    ell = data.draw(st.integers(0, n - 1))
    g = build_pseudo(m, n, ell)
    assert regular(g, 4)
    rows = [i * n + (j + 1) % n for i in range(m) for j in range(n)]
    assert g.is_automorphism(rows)
    if ell == 0:
        cols = [((i + 1) % m) * n + j for i in range(m) for j in range(n)]
        assert g.is_automorphism(cols)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_special_product_automorphisms(m):
    n = 4
    g = build_pseudo_perm(m, n, SPECIAL_TAU)
    rho = [(i + 1) * n + j if i < m - 1 else SPECIAL_TAU[j] for i in range(m) for j in range(n)]
    alpha = [i * n + 3 - j for i in range(m) for j in range(n)]
    assert g.is_automorphism(rho)
    assert g.is_automorphism(alpha)


@settings(max_examples=50, deadline=None)
@given(st.integers(5, 40), st.data())
def test_circulant_rotation_and_reflection(n, data):
    s = data.draw(st.integers(2, n // 2))
    g = build_circulant(n, {1, s})
    assert g.is_automorphism([(x + 1) % n for x in range(n)])
    assert g.is_automorphism([(-x) % n for x in range(n)])
