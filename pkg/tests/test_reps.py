import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GROUP_FACTORIES
from symred import matkernel as mk
from symred.errors import GroupMismatch
from symred.reps import (
    direct_sum,
    is_equivariant,
    is_representation,
    natural_representation,
    regular_representation,
    tensor_product,
)


def test_natural_representation_is_a_representation(named_group):
    _, group, _ = named_group
    phi = natural_representation(group)
    assert is_representation(phi)
    # permutation characters count fixed points
    for c in group.classes:
        g = group.element(c.representative_index)
        assert phi.character()[group.class_of[c.representative_index]] == \
            g.fixed_points()


def test_regular_representation_character(named_group):
    _, group, _ = named_group
    phi = regular_representation(group)
    assert is_representation(phi)
    chi = phi.character_all_elements()
    assert chi[0] == len(group)
    assert all(x == 0 for x in chi[1:])


def test_direct_sum_and_tensor_characters():
    group, _ = GROUP_FACTORIES["D4"]()
    phi = natural_representation(group)
    s = direct_sum(phi, phi)
    t = tensor_product(phi, phi)
    assert s.degree == 8 and t.degree == 16
    for g in range(group.n_classes):
        assert s.character()[g] == 2 * phi.character()[g]
        assert t.character()[g] == phi.character()[g] ** 2
    assert is_representation(s) and is_representation(t)


def test_group_mismatch_rejected():
    g1, _ = GROUP_FACTORIES["C2"]()
    g2, _ = GROUP_FACTORIES["S3"]()
    with pytest.raises(GroupMismatch):
        direct_sum(natural_representation(g1), natural_representation(g2))


def test_is_equivariant_accepts_commuting_operator():
    group, _ = GROUP_FACTORIES["D4"]()
    phi = natural_representation(group)
    M = mk.exact_matrix([[10, 2, 1, 2],
                         [2, 10, 2, 1],
                         [1, 2, 10, 2],
                         [2, 1, 2, 10]])
    assert is_equivariant(M, phi)


def test_is_equivariant_rejects_generic_operator():
    group, _ = GROUP_FACTORIES["D4"]()
    phi = natural_representation(group)
    M = mk.exact_matrix([[1, 2, 3, 4],
                         [0, 1, 0, 0],
                         [0, 0, 1, 0],
                         [0, 0, 0, 1]])
    verdict = is_equivariant(M, phi)
    assert not verdict.ok
    assert verdict.residual > 0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(
    st.integers(min_value=-5, max_value=5), min_size=4, max_size=4),
    min_size=4, max_size=4))
def test_generator_check_agrees_with_exhaustive(rows):
    group, _ = GROUP_FACTORIES["D4"]()
    phi = natural_representation(group)
    M = mk.exact_matrix(rows)
    fast = is_equivariant(M, phi)
    full = is_equivariant(M, phi, exhaustive=True)
    assert fast.ok == full.ok
