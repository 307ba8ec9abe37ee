from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exostar.linalg import Infeasible, Solution, solve_linear


def test_symmetric_system():
    res = solve_linear([[1, 1], [1, -1]], [2, 0])
    assert res == Solution((1, 1), ())


def test_contradiction():
    rows, rhs = [[1], [1]], [1, 2]
    res = solve_linear(rows, rhs)
    assert isinstance(res, Infeasible)
    assert res.check(rows, rhs)


def test_degenerate_row_flags_free_variable():
    res = solve_linear([[0]], [0])
    assert isinstance(res, Solution) and res.free == (0,)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear([[1, 2]], [1, 2])
    with pytest.raises(ValueError):
        solve_linear([[1, 2], [1]], [1, 2])


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=1, max_size=7)
)


@given(matrices, st.data())
def test_solution_or_certificate(rows, data):
    rhs = data.draw(st.lists(st.integers(-4, 4), min_size=len(rows), max_size=len(rows)))
    res = solve_linear(rows, rhs)
    if isinstance(res, Solution):
        for row, b in zip(rows, rhs):
            assert sum(Fraction(a) * x for a, x in zip(row, res.values)) == b
    else:
        assert res.check(rows, rhs)


@given(matrices, st.data())
def test_consistent_systems_are_solved(rows, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=len(rows[0]), max_size=len(rows[0])))
    rhs = [sum(a * v for a, v in zip(row, x)) for row in rows]
    assert isinstance(solve_linear(rows, rhs), Solution)
