from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symred.errors import DegreeMismatch, OrderCapExceeded
from symred.permgroup import FiniteGroup, Permutation, close, parse_permutation


def test_composition_convention():
    # (g*h)(i) = g(h(i))
    g = Permutation.from_one_line([2, 3, 1])
    h = Permutation.from_one_line([2, 1, 3])
    gh = g * h
    for i in range(3):
        assert gh(i) == g(h(i))


def test_cycle_parsing_round_trip():
    p = parse_permutation("(1,2,3)(4,5)")
    assert p.to_cycles() == "(1,2,3)(4,5)"
    q = parse_permutation("[2,3,1,5,4]")
    assert p == q


def test_identity_is_first_element():
    G = close(["(1,2,3,4)", "(1,3)"])
    assert G.element(0).is_identity()


def test_d4_closure_and_classes():
    G = close(["(1,2,3,4)", "(1,3)"])
    assert len(G) == 8
    sizes = sorted(c.size for c in G.classes)
    assert sizes == [1, 1, 2, 2, 2]
    # class representative is the minimal element index in its class
    for c in G.classes:
        assert c.representative_index == min(c.member_indices)


def test_inverse_index():
    G = close(["(1,2,3)", "(1,2)"])
    for g in range(len(G)):
        assert G.multiply(g, G.inverse(g)) == 0
        assert G.multiply(G.inverse(g), g) == 0


def test_degree_padding_for_textual_generators():
    G = close(["(1,2,3,4)", "(1,3)"])  # (1,3) inferred over 4 points
    assert all(g.degree == 4 for g in G.elements)


def test_explicit_degree_mismatch_raises():
    with pytest.raises(DegreeMismatch):
        FiniteGroup([Permutation((1, 0)), Permutation((1, 0, 2))])


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        close(["(1,2,3,4,5)", "(1,2)"], order_cap=10)


def test_permutation_order_and_inverse():
    p = parse_permutation("(1,2,3)(4,5)")
    assert p.order() == 6
    assert (p * p.inverse()).is_identity()


@st.composite
def s4_generators(draw):
    perms = draw(st.lists(
        st.permutations(list(range(4))), min_size=1, max_size=3))
    return [Permutation(tuple(p)) for p in perms]


@settings(max_examples=50, deadline=None)
@given(s4_generators())
def test_closure_is_a_subgroup(gens):
    G = FiniteGroup(gens)
    elements = set(G.elements)
    assert Permutation.identity(4) in elements
    for a in G.elements:
        assert a.inverse() in elements
        for b in G.elements:
            assert a * b in elements
    assert 24 % len(G) == 0  # Lagrange


@settings(max_examples=30, deadline=None)
@given(s4_generators())
def test_classes_partition_group(gens):
    G = FiniteGroup(gens)
    seen = sorted(i for c in G.classes for i in c.member_indices)
    assert seen == list(range(len(G)))
