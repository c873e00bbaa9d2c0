import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclability.algebra import (
    GroupSpec,
    IdentityInSet,
    InvalidElement,
    NotGenerating,
    NotInverseClosed,
    UnsupportedValency,
    classify,
    element_order,
    generated_subgroup,
    in_cyclic_subgroup,
    is_involution,
    validate_connection_set,
    verify_certificate,
)
from cyclability.suites import random_connection_sets


def test_group_basics():
    G = GroupSpec((2, 4))
    assert G.order == 8
    assert G.zero == (0, 0)
    assert G.add((1, 3), (1, 2)) == (0, 1)
    assert G.neg((1, 1)) == (1, 3)
    assert [G.from_index(G.index(g)) for g in G.elements()] == list(G.elements())


def test_group_rejects_bad_moduli():
    with pytest.raises(ValueError):
        GroupSpec((1, 3))


def test_check_rejects_unreduced_element():
    with pytest.raises(InvalidElement):
        GroupSpec((5,)).check((5,))


@pytest.mark.parametrize("moduli, g, order", [
    ((5,), (0,), 1),
    ((7,), (1,), 7),
    ((2, 4), (1, 2), 2),
    ((2, 4), (1, 1), 4),
])
def test_element_order(moduli, g, order):
    assert element_order(g, GroupSpec(moduli)) == order


def test_is_involution():
    assert not is_involution((0,), GroupSpec((6,)))
    assert is_involution((3,), GroupSpec((6,)))
    assert not is_involution((2,), GroupSpec((5,)))


def test_in_cyclic_subgroup():
    G = GroupSpec((6,))
    assert in_cyclic_subgroup((0,), (5,), G)
    assert not in_cyclic_subgroup((3,), (2,), G)
    assert in_cyclic_subgroup((4,), (2,), G)


def test_validate_connection_set():
    assert validate_connection_set(GroupSpec((7,)), [(1,), (6,), (2,), (5,)]) == 4
    assert validate_connection_set(GroupSpec((2, 2, 2)), [(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 3


@pytest.mark.parametrize("moduli, S, err", [
    ((8,), [(1,), (4,)], NotInverseClosed),
    ((8,), [(0,), (1,), (7,)], IdentityInSet),
    ((8,), [(2,), (6,), (4,)], NotGenerating),
    ((4, 2), [(2, 0), (0, 1), (2, 1)], NotGenerating),
    ((9,), [(1,), (8,)], UnsupportedValency),
    ((13,), [(1,), (12,), (2,), (11,), (3,), (10,)], UnsupportedValency),
])
def test_validate_connection_set_errors(moduli, S, err):
    with pytest.raises(err):
        validate_connection_set(GroupSpec(moduli), S)


@pytest.mark.parametrize("moduli, S, tag, params", [
    ((12,), [(1,), (11,), (5,), (7,)], "circulant", {"n": 12, "s": 5}),
    ((2, 2, 2, 2), [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], "q4", {}),
    ((10,), [(5,), (1,), (9,)], "cubic_circulant", {"n": 10}),
    ((2, 2, 2), [(1, 0, 0), (0, 1, 0), (0, 0, 1)], "q3", {}),
    ((2, 2), [(1, 0), (0, 1), (1, 1)], "k4", {}),
    ((2, 5), [(1, 0), (0, 1), (0, 4)], "k2_box_cn", {"n": 5}),
])
def test_classify_examples(moduli, S, tag, params):
    G = GroupSpec(moduli)
    cls = classify(G, S)
    assert cls.tag == tag
    assert cls.params == params
    assert verify_certificate(G, S, cls)


def test_classify_circulant_keeps_identity_certificate():
    G = GroupSpec((12,))
    cls = classify(G, [(1,), (11,), (5,), (7,)])
    assert cls.certificate == tuple(range(12))


def test_classify_two_cycles_is_a_product():
    G = GroupSpec((3, 4))
    S = [(1, 0), (2, 0), (0, 1), (0, 3)]
    cls = classify(G, S)
    assert cls.tag == "pseudo_product"
    assert (cls.params["m"], cls.params["n"]) in ((3, 4), (4, 3))
    assert cls.params["ell"] == 0
    assert verify_certificate(G, S, cls)


def test_classify_circulant_normalizes_jump():
    cls = classify(GroupSpec((15,)), [(1,), (14,), (11,), (4,)])
    assert cls.tag == "circulant"
    assert cls.params == {"n": 15, "s": 4}


def test_random_certificates():
    rng = random.Random(7)
    tags = set()
    for G, S in random_connection_sets(rng, 100):
        cls = classify(G, S)
        tags.add(cls.tag)
        assert verify_certificate(G, S, cls), (G, S, cls.tag)
    assert {"pseudo_product", "circulant", "q4"} <= tags


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(2, 8), min_size=1, max_size=3), st.data())
def test_lagrange_for_cyclic_subgroups(moduli, data):
    G = GroupSpec(tuple(moduli))
    g = tuple(data.draw(st.integers(0, d - 1)) for d in moduli)
    sub = generated_subgroup(G, [g])
    assert len(sub) == element_order(g, G)
    assert G.order % len(sub) == 0


@settings(max_examples=60, deadline=None)
@given(st.integers(5, 40), st.integers(2, 19))
def test_circulant_jump_normal_form(n, s):
    s = s % n
    if s < 2 or s == n - 1 or math.gcd(n, s) != 1 or 2 * s == n:
        return
    G = GroupSpec((n,))
    S = [(1,), (n - 1,), (s,), (n - s,)]
    cls = classify(G, S)
    if cls.tag == "circulant":
        assert math.gcd(cls.params["n"], cls.params["s"]) == 1
        assert 2 <= cls.params["s"] <= n // 2
    assert verify_certificate(G, S, cls)
