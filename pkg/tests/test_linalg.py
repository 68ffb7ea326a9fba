"""Exact rational feasibility and nullspace computations."""

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from convexion import linalg

F = Fraction


def check_solution(rows, rhs, x):
    assert all(v >= 0 for v in x)
    for row, b in zip(rows, rhs):
        assert sum(a * v for a, v in zip(row, x)) == b


def test_simple_feasible_system():
    rows = [[F(1), F(1)], [F(1), F(-1)]]
    rhs = [F(1), F(0)]
    x = linalg.solve_eq_nonneg(rows, rhs)
    assert x == [F(1, 2), F(1, 2)]


def test_infeasible_by_sign():
    # x1 + x2 = -1 has no nonnegative solution.
    assert linalg.solve_eq_nonneg([[F(1), F(1)]], [F(-1)]) is None


def test_infeasible_inconsistent():
    rows = [[F(1), F(0)], [F(1), F(0)]]
    rhs = [F(1), F(2)]
    assert linalg.solve_eq_nonneg(rows, rhs) is None


def test_degenerate_zero_rows():
    rows = [[F(0), F(0)]]
    assert linalg.solve_eq_nonneg(rows, [F(0)]) == [F(0), F(0)]
    assert linalg.solve_eq_nonneg(rows, [F(1)]) is None


@given(st.data())
def test_random_systems_agree_with_verification(data):
    m = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 4))
    rows = [
        [F(data.draw(st.integers(-3, 3))) for _ in range(n)] for _ in range(m)
    ]
    # Build rhs from a known nonnegative point half the time, else random.
    if data.draw(st.booleans()):
        point = [F(data.draw(st.integers(0, 3))) for _ in range(n)]
        rhs = [sum(a * v for a, v in zip(row, point)) for row in rows]
        x = linalg.solve_eq_nonneg(rows, rhs)
        assert x is not None
        check_solution(rows, rhs, x)
    else:
        rhs = [F(data.draw(st.integers(-3, 3))) for _ in range(m)]
        x = linalg.solve_eq_nonneg(rows, rhs)
        if x is not None:
            check_solution(rows, rhs, x)


def test_nullspace_and_membership():
    rows = [[F(1), F(-1), F(0)], [F(0), F(1), F(-1)]]
    basis = linalg.nullspace(rows, 3)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert linalg.dot(row, v) == 0
    assert linalg.in_row_space(rows, [F(1), F(0), F(-1)])
    assert not linalg.in_row_space(rows, [F(1), F(0), F(0)])


def test_nullspace_of_empty_matrix_is_full():
    basis = linalg.nullspace([], 3)
    assert len(basis) == 3


@given(st.data())
def test_nullspace_orthogonality_random(data):
    m = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 5))
    rows = [
        [F(data.draw(st.integers(-2, 2))) for _ in range(n)] for _ in range(m)
    ]
    basis = linalg.nullspace(rows, n)
    for v in basis:
        for row in rows:
            assert linalg.dot(row, v) == 0
    reduced, pivots = linalg.rref(rows, n)
    assert len(reduced) + len(basis) == n  # rank-nullity
