from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dagg.cone import decompose_cone, in_cone, lp_feasible, separating_vector
from dagg.errors import NotPointed
from dagg.exact_linalg import Matrix, dot, infinity_norm, rank

from strategies import int_matrices


def test_lp_examples():
    assert not lp_feasible(A_ub=[[-1], [1]], b_ub=[0, -1]).feasible
    res = lp_feasible(A_eq=[[1, 1]], b_eq=[1])
    assert res.feasible and sum(res.witness) == 1 and min(res.witness) >= 0
    A = Matrix([[1, 2], [2, 1]])
    assert not in_cone(A, (-1, -2)).feasible


def test_lp_free_variables():
    res = lp_feasible(A_eq=[[1, 1]], b_eq=[-3], nvars=2, free=(0,))
    assert res.feasible
    assert res.witness[0] + res.witness[1] == -3 and res.witness[1] >= 0


@settings(max_examples=200, deadline=None)
@given(int_matrices(max_rows=3, max_cols=4, amax=4), st.data())
def test_lp_witness_is_exact(A, data):
    x = tuple(data.draw(st.integers(0, 3)) for _ in range(A.ncols))
    y = A @ x
    res = in_cone(A, y)
    assert res.feasible
    assert all(isinstance(v, (int, Fraction)) for v in res.witness)
    assert min(res.witness) >= 0 and A @ res.witness == y


def test_decompose_examples():
    d = decompose_cone(Matrix([[1, 2], [2, 1]]))
    assert d.r == 0 and d.is_pointed and d.A_P == Matrix([[1, 2], [2, 1]])

    d = decompose_cone(Matrix([[1, -1, 0], [0, 0, 1]]))
    assert d.r == 1 and d.lineal_cols == (0, 1) and d.pointed_cols == (2,)
    assert rank(d.R_basis.hstack(Matrix([[1], [0]]))) == 1
    assert d.A_P == Matrix([[0], [1]])

    d = decompose_cone(Matrix([[1, -1]]))
    assert d.r == 1 and d.pointed_cols == ()


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_rows=3, max_cols=4, amax=3))
def test_decompose_invariants(A):
    d = decompose_cone(A)
    assert sorted(d.lineal_cols + d.pointed_cols) == list(range(A.ncols))
    # lineal columns: -A_j in the cone; pointed: not
    for j in d.lineal_cols:
        assert in_cone(A, tuple(-v for v in A.col(j))).feasible
    for j in d.pointed_cols:
        assert not in_cone(A, tuple(-v for v in A.col(j))).feasible
    if d.pointed_cols:
        sep = separating_vector(d.A_P)
        assert all(dot(sep.h, A.col(j)) >= 1 for j in d.pointed_cols)
    assert d.r == (rank(d.A_R) if d.lineal_cols else 0)


def test_separating_vector_examples():
    M = Matrix([[1, 2], [2, 1]])
    sep = separating_vector(M)
    assert all(dot(sep.h, c) >= 4 for c in M.columns())
    sep = separating_vector(Matrix.identity(2))
    assert all(dot(sep.h, c) >= 2 for c in Matrix.identity(2).columns())
    with pytest.raises(NotPointed):
        separating_vector(Matrix([[1, -1]]))


@settings(max_examples=150, deadline=None)
@given(int_matrices(max_rows=3, max_cols=4, amax=3), st.integers(1, 9))
def test_separating_vector_margin(A, margin):
    d = decompose_cone(A)
    if not d.is_pointed or any(not any(c) for c in A.columns()):
        return
    sep = separating_vector(A, margin)
    assert all(isinstance(v, int) for v in sep.h)
    assert all(dot(sep.h, c) >= margin for c in A.columns())
