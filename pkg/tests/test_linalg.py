from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sympcoh import linalg
from sympcoh.linalg import Subspace, quotient_dim

entries = st.integers(-3, 3).map(Fraction)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return [[draw(entries) for _ in range(n)] for _ in range(m)], n


def _sympy(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_matches_sympy(mn):
    rows, _ = mn
    assert linalg.rank(rows) == _sympy(rows).rank()


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_nullspace_matches_sympy(mn):
    rows, n = mn
    ns = linalg.nullspace(rows, n)
    assert len(ns) == len(_sympy(rows).nullspace())
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(rows, v))


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_rref_matches_sympy(mn):
    rows, n = mn
    red, pivots = linalg.rref(rows, n)
    ref, ref_pivots = _sympy(rows).rref()
    assert tuple(pivots) == tuple(ref_pivots)
    expected = [[Fraction(int(x.p), int(x.q)) for x in ref.row(i)] for i in range(len(pivots))]
    assert red == expected


@given(st.integers(1, 5), st.data())
@settings(max_examples=100, deadline=None)
def test_determinant_and_inverse_match_sympy(n, data):
    rows = [[data.draw(entries) for _ in range(n)] for _ in range(n)]
    det = linalg.determinant(rows)
    assert det == Fraction(str(_sympy(rows).det()))
    if det:
        inv = linalg.inverse(rows)
        assert linalg.matmul(rows, inv) == linalg.identity(n)


@given(matrices(max_rows=4, max_cols=5), matrices(max_rows=4, max_cols=5))
@settings(max_examples=100, deadline=None)
def test_intersection_dimension_formula(a, b):
    rows_a, n = a
    rows_b, _ = b
    rows_b = [(r + [Fraction(0)] * n)[:n] for r in rows_b]
    U, W = Subspace(n, rows_a), Subspace(n, rows_b)
    inter = U.intersect(W)
    assert inter.dimension == U.dimension + W.dimension - (U + W).dimension
    assert U.contains_space(inter) and W.contains_space(inter)


def test_subspace_equality_ignores_spanning_set():
    a = Subspace(3, [[1, 1, 0], [0, 1, 1]])
    b = Subspace(3, [[1, 2, 1], [1, 0, -1]])
    assert a == b
    assert a.contains([2, 3, 1]) and not a.contains([0, 0, 1])


def test_quotient_requires_inclusion():
    import pytest
    from sympcoh.errors import InclusionError
    big = Subspace(3, [[1, 0, 0]])
    small = Subspace(3, [[0, 1, 0]])
    with pytest.raises(InclusionError):
        quotient_dim(big, small)
    assert quotient_dim(Subspace.full(3), small) == 2


def test_solve_and_coordinates():
    rows = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    x = linalg.solve(rows, [Fraction(5), Fraction(6)], 2)
    assert linalg.matvec(rows, x) == [5, 6]
    s = Subspace(3, [[1, 0, 1], [0, 1, 1]])
    assert s.coordinates([2, 3, 5]) == [2, 3]
