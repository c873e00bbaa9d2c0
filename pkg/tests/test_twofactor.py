import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclability.algebra.classify import SPECIAL_TAU
from cyclability.builders.family import hamilton_band
from cyclability.graphs import build_circulant, build_path_cycle, build_pseudo, build_pseudo_perm
from cyclability.templates import (
    NegativeCount,
    NotInsertable,
    ParityViolation,
    check_template,
    expand,
    load_templates,
    random_insertions,
    template,
)
from cyclability.twofactor import PreconditionViolated, TwoFactor, separates, shift_jump, validate


def u(i, j, n=4):
    return i * n + j


# the three cycles separating column-0 triples of the special product, m = 4
SPECIAL_M4 = TwoFactor.of([
    [u(0, 0), u(1, 0), u(1, 3), u(2, 3), u(3, 3)],
    [u(0, 1), u(1, 1), u(1, 2), u(2, 2), u(3, 2)],
    [u(0, 3), u(3, 0), u(2, 0), u(2, 1), u(3, 1), u(0, 2)],
])


def test_validate_cycle():
    assert validate(build_circulant(6, {1}), TwoFactor.of([range(6)])) is None


def test_validate_reports_missing_chord():
    bad = validate(build_circulant(6, {1}), TwoFactor.of([[0, 1, 2], [3, 4, 5]]))
    assert bad.kind == "NonEdge"


def test_validate_other_violations():
    g = build_circulant(6, {1, 2})
    assert validate(g, TwoFactor.of([[0, 1, 2], [2, 3, 4]])).kind == "Overlap"
    assert validate(g, TwoFactor.of([[0, 1, 2]])).kind == "NotSpanning"
    assert validate(g, TwoFactor.of([[0, 1], [2, 3, 4, 5]])).kind == "ShortCycle"


def test_special_product_cycles_validate_and_separate():
    g = build_pseudo_perm(4, 4, SPECIAL_TAU)
    assert validate(g, SPECIAL_M4) is None
    assert separates(SPECIAL_M4, [u(0, 0), u(0, 1), u(0, 2)])
    assert separates(SPECIAL_M4, [u(0, 0), u(0, 1), u(0, 3)])


def test_separates():
    assert separates(TwoFactor.of([[0, 1, 2]]), [1])
    tf = TwoFactor.of([[0, 1, 2], [3, 4, 5]])
    assert not separates(tf, [0, 1])
    assert separates(tf, [0, 4])
    assert not separates(tf, [0])


def test_json_round_trip():
    tf = TwoFactor.of([[0, 1, 2], [3, 4, 5]])
    assert TwoFactor.from_json(tf.to_json()).cycles == tf.cycles


def column_bands(m, n):
    """Three Hamilton bands on C_m x C_n leaving the m-2 | m-1 boundary unused."""
    spans = [(0, 1), (1, m - 2), (m - 1, 1)] if m > 3 else [(0, 1), (1, 1), (2, 1)]
    cycles = []
    for start, width in spans:
        cycles.append([(start + i) * n + j for i, j in hamilton_band(width, n)])
    return TwoFactor.of(cycles)


def test_shift_jump_zero_is_identity():
    tf = column_bands(4, 5)
    assert shift_jump(tf, 4, 5, 0) == tf


@pytest.mark.parametrize("m, n", [(3, 3), (4, 5), (6, 4)])
def test_shift_jump_moves_bands_to_every_jump(m, n):
    tf = column_bands(m, n)
    assert validate(build_pseudo(m, n, 0), tf) is None
    for ell in range(n):
        out = shift_jump(tf, m, n, ell)
        assert validate(build_pseudo(m, n, ell), out) is None
        assert separates(out, [0, n, (m - 1) * n])


def test_shift_jump_needs_empty_boundary():
    tf = TwoFactor.of([[i * 4 + j for i, j in hamilton_band(3, 4)]])
    with pytest.raises(PreconditionViolated):
        shift_jump(tf, 3, 4, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.integers(3, 7), st.data())
def test_shift_jump_inverse(m, n, data):
    ell = data.draw(st.integers(0, n - 1))
    tf = column_bands(m, n)
    assert shift_jump(shift_jump(tf, m, n, ell), m, n, -ell) == tf


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6), st.integers(3, 6), st.integers(0, 50))
def test_separation_invariant_under_automorphism(m, n, shift):
    g = build_pseudo(m, n, 0)
    tf = column_bands(m, n)
    targets = [0, n, (m - 1) * n]
    a, b = shift % m, shift % n
    perm = [((i + a) % m) * n + (j + b) % n for i in range(m) for j in range(n)]
    moved = tf.relabel(perm)
    assert validate(g, moved) is None
    assert separates(moved, [perm[t] for t in targets]) == separates(tf, targets)


# -- templates ---------------------------------------------------------------------

def test_every_template_validates():
    temps = load_templates()
    assert temps
    for t in temps.values():
        check_template(t)


def test_expand_identity():
    for t in load_templates().values():
        e = expand(t, {})
        assert e.two_factor == t.base.two_factor()
        assert (e.m, e.n) == (t.m, t.n)


def test_expand_two_targets_on_nine_by_seven():
    t = template("cylinder_pair_3x4")
    e = expand(t, {"col:0": 6, "row:2": 2, "row:3": 1})
    assert (e.m, e.n) == (9, 7)
    assert validate(build_path_cycle(9, 7), e.two_factor) is None
    assert separates(e.two_factor, [u(0, 0, 7), u(0, 4, 7)])
    assert len(e.two_factor.cycles) == 2


def test_expand_errors():
    t = template("cylinder_pair_3x4")
    with pytest.raises(ParityViolation):
        expand(t, {"col:1": 1})
    with pytest.raises(NegativeCount):
        expand(t, {"col:0": -1})
    jumped = template("column_triple_consecutive_4x4_jump1")
    with pytest.raises(NotInsertable):
        expand(jumped, {"row:0": 2})


def test_anchor_bookkeeping():
    t = template("cylinder_pair_3x4")
    e = expand(t, {"row:0": 2, "col:0": 3})
    assert e.anchors["a"] == (0, 0)
    assert e.anchors["b"] == (0, 3)


def test_random_insertions_preserve_cycle_count():
    rng = random.Random(3)
    for t in load_templates().values():
        for _ in range(20):
            ins = random_insertions(t, rng)
            e = expand(t, ins)
            assert len(e.two_factor.cycles) == len(t.cycles)
            assert validate(e.lattice.graph(), e.two_factor) is None
