import itertools

import pytest

from cyclability.graphs import (
    build_circulant,
    build_hypercube,
    build_path_cycle,
    build_pseudo,
    build_pseudo_perm,
    import_json,
)
from cyclability.algebra.classify import SPECIAL_TAU
from cyclability.oracle import (
    BudgetExceeded,
    ProvedNone,
    Witness,
    enumerate_2factors,
    find_separating_2factor,
    is_k_spanning_cyclable,
    orbit_representatives,
)
from cyclability.twofactor import TwoFactor, separates, validate


def complete4():
    return import_json('{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}')


def all_2factors(graph):
    """Every spanning 2-regular edge set, by plain per-vertex choice; no pruning."""
    deg = [0] * graph.n
    chosen = []
    out = []

    def go(v):
        if v == graph.n:
            tf = TwoFactor.from_edges(graph.n, chosen)
            if validate(graph, tf) is None:
                out.append(tf)
            return
        need = 2 - deg[v]
        if need < 0:
            return
        later = [w for w in graph.adj[v] if w > v and deg[w] < 2]
        for pick in itertools.combinations(later, need):
            for w in pick:
                deg[w] += 1
                chosen.append((v, w))
            deg[v] = 2
            go(v + 1)
            deg[v] = 2 - need
            for w in pick:
                deg[w] -= 1
                chosen.pop()

    go(0)
    return out


REFERENCE_GRAPHS = {
    "k4": complete4(),
    "prism5": build_path_cycle(2, 5),
    "cube3": build_hypercube(3),
    "circ7_2": build_circulant(7, {1, 2}),
    "circ8_3": build_circulant(8, {1, 3}),
    "torus3x3_jump1": build_pseudo(3, 3, 1),
    "torus3x4_jump2": build_pseudo(3, 4, 2),
    "special3": build_pseudo_perm(3, 4, SPECIAL_TAU),
    "circ13_5": build_circulant(13, {1, 5}),
    "torus4x4_jump1": build_pseudo(4, 4, 1),
}


@pytest.mark.parametrize("name", list(REFERENCE_GRAPHS))
def test_oracle_matches_reference(name):
    g = REFERENCE_GRAPHS[name]
    factors = all_2factors(g)
    cycle_of = [{v: k for k, c in enumerate(tf.cycles) for v in c} for tf in factors]
    sizes = [len(tf.cycles) for tf in factors]
    for k in (1, 2, 3):
        for T in itertools.combinations(range(g.n), k):
            expected = any(
                size == k and len({co[t] for t in T}) == k for co, size in zip(cycle_of, sizes)
            )
            res = find_separating_2factor(g, T)
            assert not isinstance(res, BudgetExceeded)
            assert isinstance(res, Witness) == expected, (name, T)
            if expected:
                assert validate(g, res.two_factor) is None
                assert separates(res.two_factor, T)


def test_enumerate_counts():
    assert len(enumerate_2factors(build_circulant(5, {1}), 10)) == 1
    assert len(enumerate_2factors(complete4(), 10)) == 3
    cols = TwoFactor.of([[0, 1, 2], [3, 4, 5], [6, 7, 8]])
    found = enumerate_2factors(build_pseudo(3, 3, 0), 1000)
    assert sorted(cols.edges()) in [sorted(tf.edges()) for tf in found]


def test_enumerate_agrees_with_reference():
    g = build_circulant(9, {1, 2})
    fast = {tuple(sorted(tf.edges())) for tf in enumerate_2factors(g, 10**6)}
    slow = {tuple(sorted(tf.edges())) for tf in all_2factors(g)}
    assert fast == slow


def test_single_target_needs_hamiltonicity():
    assert isinstance(find_separating_2factor(build_circulant(6, {1}), [3]), Witness)
    # two triangles joined by one edge: a 2-factor exists, a Hamilton cycle does not
    two_triangles = import_json('{"n": 6, "edges": [[0,1],[1,2],[0,2],[3,4],[4,5],[3,5],[0,3]]}')
    assert isinstance(find_separating_2factor(two_triangles, [0]), ProvedNone)


def test_known_negatives():
    assert isinstance(find_separating_2factor(build_circulant(7, {1, 2}), [0, 1, 2]), ProvedNone)
    assert isinstance(find_separating_2factor(build_pseudo(3, 4, 2), [0, 1, 2]), ProvedNone)


def test_budget_exhaustion():
    res = find_separating_2factor(build_pseudo(6, 6, 0), [0, 1, 2], budget=3)
    assert isinstance(res, BudgetExceeded)


def test_determinism():
    g = build_pseudo(4, 5, 2)
    a = find_separating_2factor(g, [0, 7, 13])
    b = find_separating_2factor(g, [0, 7, 13])
    assert a == b


def test_cyclability_reports():
    assert is_k_spanning_cyclable(build_hypercube(3), 2).verdict == "cyclable"
    rep = is_k_spanning_cyclable(complete4(), 2)
    assert rep.verdict == "not_cyclable" and len(rep.subset) == 2
    for ell in range(3):
        rep = is_k_spanning_cyclable(build_pseudo(3, 3, ell), 3, vertex_transitive=True)
        assert rep.verdict == "not_cyclable"
        assert isinstance(find_separating_2factor(build_pseudo(3, 3, ell), rep.subset), ProvedNone)


def test_parallel_report_matches_serial():
    g = build_pseudo(4, 3, 1)
    serial = is_k_spanning_cyclable(g, 3, vertex_transitive=True)
    parallel = is_k_spanning_cyclable(g, 3, vertex_transitive=True, jobs=2)
    assert serial == parallel


def test_orbit_representatives():
    n = 8
    rot = [(x + 1) % n for x in range(n)]
    reps = orbit_representatives(n, 2, [rot])
    assert reps == [(0, 1), (0, 2), (0, 3), (0, 4)]
    assert len(orbit_representatives(5, 2)) == 10
