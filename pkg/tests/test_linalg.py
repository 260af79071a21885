from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dimstat import linalg

small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_rows=4, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@st.composite
def rational_matrices(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 6))
    frac = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    return [[draw(frac) for _ in range(c)] for _ in range(r)]


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(m):
    assert linalg.rank(m) == sympy.Matrix(m).rank()


@settings(max_examples=150, deadline=None)
@given(rational_matrices())
def test_nullspace_is_exact_and_complete(m):
    ns = linalg.nullspace(m)
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(m, v))
    assert len(ns) == len(m[0]) - sympy.Matrix(m).rank()
    if ns:
        oracle = [[Fraction(int(x.p), int(x.q)) for x in vec] for vec in sympy.Matrix(m).nullspace()]
        assert linalg.same_row_space(ns, oracle)


@settings(max_examples=100, deadline=None)
@given(rational_matrices())
def test_rref_matches_sympy(m):
    ours, pivots = linalg.rref(m)
    theirs, spiv = sympy.Matrix(m).rref()
    assert tuple(pivots) == tuple(spiv)
    for i, row in enumerate(ours[: len(pivots)]):
        assert [sympy.Rational(x.numerator, x.denominator) for x in row] == list(theirs.row(i))


def test_bareiss_is_fraction_free():
    rows, piv = linalg.bareiss([[2, 4, 6], [1, 3, 5], [0, 1, 1]])
    assert all(isinstance(x, int) for r in rows for x in r)
    assert piv == [0, 1, 2]


def test_solve_consistent_and_inconsistent():
    a = [[1, 1], [1, -1]]
    x, free = linalg.solve(a, [3, 1])
    assert x == [2, 1] and free == []
    x, _ = linalg.solve([[1, 1], [2, 2]], [1, 3])
    assert x is None


def test_solve_reports_free_columns():
    x, free = linalg.solve([[1, 1, 0]], [2])
    assert free == [1, 2]
    assert linalg.matvec([[1, 1, 0]], x) == [2]


def test_determined_columns():
    assert linalg.determined_columns([[1, 0, 0], [0, 1, 1]], 3) == [True, False, False]


@pytest.mark.parametrize("vec,expected", [
    ([Fraction(1, 2), Fraction(-1, 4)], [2, -1]),
    ([Fraction(-3), Fraction(6)], [-1, 2]),
    ([0, 0, Fraction(5, 3)], [0, 0, 1]),
])
def test_primitive_integer(vec, expected):
    assert linalg.primitive_integer(vec) == expected


def test_same_row_space():
    assert linalg.same_row_space([[1, 0], [0, 1]], [[1, 1], [1, -1]])
    assert not linalg.same_row_space([[1, 0]], [[0, 1]])
    assert not linalg.same_row_space([[1, 0]], [[1, 0], [0, 1]])
