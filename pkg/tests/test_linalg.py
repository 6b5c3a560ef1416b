from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from effdiv.linalg import DimensionOverflow, rank_exact, solve_exact

fr = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def matrices(max_r=5, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(fr, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(A):
    assert rank_exact(A) == sympy.Matrix(A).rank()


@given(matrices(), st.data())
@settings(max_examples=60, deadline=None)
def test_solution_satisfies_system(A, data):
    x0 = data.draw(st.lists(fr, min_size=len(A[0]), max_size=len(A[0])))
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    x = solve_exact(A, b)
    assert x is not None
    assert [sum(a * v for a, v in zip(row, x)) for row in A] == b


def test_inconsistent_system():
    assert solve_exact([[1, 1], [2, 2]], [1, 3]) is None


def test_column_order_keeps_late_unknowns_zero():
    # x + y = 1: pivot on y first, x stays free at 0
    assert solve_exact([[1, 1]], [1], column_order=[1, 0]) == [0, 1]
    assert solve_exact([[1, 1]], [1], column_order=[0, 1]) == [1, 0]


def test_unknown_cap():
    with pytest.raises(DimensionOverflow):
        solve_exact([[1, 1, 1]], [1], max_unknowns=2)
