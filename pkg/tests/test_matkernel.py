from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symred import matkernel as mk
from symred.errors import SingularMatrix


def test_parse_scalar_rational_and_complex():
    assert mk.parse_scalar("3/4", mk.EXACT) == Fraction(3, 4)
    assert mk.parse_scalar("-2", mk.EXACT) == Fraction(-2)
    assert mk.parse_scalar("2+3i", mk.FLOAT) == 2 + 3j
    assert mk.parse_scalar("-i", mk.FLOAT) == -1j
    assert mk.parse_scalar("0.5", mk.FLOAT) == 0.5


def test_format_parse_round_trip():
    for x in (Fraction(22, 7), Fraction(-3), 1.25 - 0.5j, 2.0 + 0j):
        backend = mk.EXACT if isinstance(x, Fraction) else mk.FLOAT
        assert mk.parse_scalar(mk.format_scalar(x), backend) == x


def test_backend_of():
    assert mk.backend_of(mk.exact_matrix([[1, 2], [3, 4]])) == mk.EXACT
    assert mk.backend_of(mk.float_matrix([[1, 2], [3, 4]])) == mk.FLOAT


def test_rref_pivots():
    A = mk.exact_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    R, pivots = mk.rref(A)
    assert pivots == [0, 2]
    assert mk.rank_exact(A) == 2


def test_exact_solve():
    A = mk.exact_matrix([[2, 1], [1, 3]])
    B = mk.exact_matrix([["1/2"], [1]])
    X = mk.solve(A, B)
    assert mk.max_abs(mk.matmul(A, X) - B) == 0


def test_exact_solve_singular():
    A = mk.exact_matrix([[1, 2], [2, 4]])
    with pytest.raises(SingularMatrix):
        mk.solve(A, mk.eye(2, mk.EXACT))


def test_float_solve_residual():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    B = rng.standard_normal((6, 2)) + 0j
    X, residual = mk.solve_with_residual(A, B)
    assert residual < 1e-12


def test_column_space_basis_float_rank():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((8, 3)) @ rng.standard_normal((3, 6))
    pivots, cols = mk.column_space_basis(A.astype(complex), tol=1e-9)
    assert len(pivots) == 3
    assert pivots == sorted(pivots)
    assert cols.shape == (8, 3)


def test_sort_spectrum_orders_by_real_then_imag():
    vals = [1 + 2j, 1 - 1j, 0 + 0j]
    assert mk.sort_spectrum(vals) == [0, 1 - 1j, 1 + 2j]


def test_sort_spectrum_clusters_near_ties():
    # two computations that perturb degenerate real parts oppositely must
    # still pair up elementwise
    a = [1.0 + 5j, (1.0 + 1e-12) + 1j]
    b = [(1.0 + 1e-12) + 5j, 1.0 + 1j]
    sa, sb = mk.sort_spectrum(a), mk.sort_spectrum(b)
    assert max(abs(x - y) for x, y in zip(sa, sb)) < 1e-10


fractions = st.fractions(
    min_value=-10, max_value=10, max_denominator=12)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(fractions, min_size=3, max_size=3),
                min_size=3, max_size=3))
def test_exact_solve_reproduces_rhs(rows):
    A = mk.exact_matrix(rows)
    if mk.rank_exact(A) < 3:
        return
    B = mk.exact_matrix([[1], [2], ["1/3"]])
    X = mk.solve(A, B)
    assert mk.max_abs(mk.matmul(A, X) - B) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=50, allow_nan=False,
                                   allow_infinity=False),
                min_size=1, max_size=12))
def test_sort_spectrum_is_a_permutation(vals):
    out = mk.sort_spectrum(vals)
    key = lambda z: (z.real, z.imag)
    assert sorted(out, key=key) == sorted(map(complex, vals), key=key)
