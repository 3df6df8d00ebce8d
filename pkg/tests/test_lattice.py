from itertools import product

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dagg.errors import DimensionMismatch, RankDeficient
from dagg.exact_linalg import Matrix, invert, rank, vec_inf_norm
from dagg.lattice import (
    BoundedLatticeSpec,
    LatticeBasis,
    bounded_image_bound,
    lattice_basis,
    lattice_subspace_intersection,
    member,
)

from strategies import int_matrices


def basis_of(B):
    B = Matrix(B)
    return LatticeBasis(B, invert(B))


def test_lattice_basis_examples():
    assert lattice_basis(Matrix([[1, 2], [2, 1]])).B == Matrix([[1, 0], [2, 3]])
    assert lattice_basis(Matrix.identity(2)).B == Matrix.identity(2)
    with pytest.raises(RankDeficient):
        lattice_basis(Matrix([[1, 2], [2, 4]]))


def test_member_examples():
    basis = basis_of([[1, 0], [2, 3]])
    assert member(basis, (3, 3)) == (True, (3, -1))
    assert member(basis, (0, 0)) == (True, (0, 0))
    assert member(basis, (0, 1)) == (False, None)
    with pytest.raises(DimensionMismatch):
        member(basis, (1, 2, 3))


def test_bounded_image_bound_examples():
    A = Matrix([[1, 2], [2, 1]])
    basis = lattice_basis(A)
    assert basis.B_inv @ A == Matrix([[1, 2], [0, -1]])
    assert bounded_image_bound(A, basis, (3, 3)) == 9
    assert bounded_image_bound(A, basis, (0, 0)) == 1
    assert bounded_image_bound(Matrix.identity(2), basis_of([[1, 0], [0, 1]]), (5, 7)) == 7


def test_bounded_lattice_contains():
    box = BoundedLatticeSpec(basis_of([[1, 0], [2, 3]]), 2)
    assert box.contains((1, 2))      # coords (1, 0)
    assert not box.contains((3, 3))  # coords (3, -1)
    with pytest.raises(ValueError):
        BoundedLatticeSpec(box.basis, 0)


@st.composite
def full_rank_systems(draw):
    A = draw(int_matrices(min_rows=1, max_rows=3, min_cols=1, max_cols=5, amax=5))
    if rank(A) < A.nrows:
        A = A.hstack(Matrix.identity(A.nrows).scale(draw(st.integers(1, 4))))
    return A


@settings(max_examples=150, deadline=None)
@given(full_rank_systems(), st.data())
def test_member_of_lattice_images(A, data):
    basis = lattice_basis(A)
    assert basis.B @ basis.B_inv == Matrix.identity(A.nrows)
    x = tuple(data.draw(st.integers(-4, 4)) for _ in range(A.ncols))
    ok, beta = member(basis, A @ x)
    assert ok and basis.B @ beta == A @ x


@settings(max_examples=150, deadline=None)
@given(full_rank_systems(), st.data())
def test_box_images_lie_in_bounded_lattice(A, data):
    u = tuple(data.draw(st.integers(0, 4)) for _ in range(A.ncols))
    basis = lattice_basis(A)
    M = bounded_image_bound(A, basis, u)
    x = tuple(data.draw(st.integers(0, w)) for w in u)
    assert vec_inf_norm(basis.B_inv @ (A @ x)) <= M


def test_subspace_intersection_examples():
    out = lattice_subspace_intersection(basis_of([[1, 0], [0, 1]]), Matrix([[1], [0]]))
    assert out.columns() == [(1, 0)]
    out = lattice_subspace_intersection(basis_of([[2, 0], [0, 2]]), Matrix([[1], [1]]))
    assert out.columns() == [(2, 2)]
    B = Matrix([[1, 0], [2, 3]])
    full = lattice_subspace_intersection(basis_of(B), Matrix.identity(2))
    # same lattice as B: mutual containment
    for c in B.columns():
        assert member(basis_of(full), c)[0]
    for c in full.columns():
        assert member(basis_of(B), c)[0]
    with pytest.raises(DimensionMismatch):
        lattice_subspace_intersection(basis_of(B), Matrix([[1], [0], [0]]))


@settings(max_examples=100, deadline=None)
@given(full_rank_systems(), st.data())
def test_subspace_intersection_exhaustive(A, data):
    m = A.nrows
    r = data.draw(st.integers(1, m))
    R = Matrix.from_columns([tuple(data.draw(st.integers(-2, 2)) for _ in range(m))
                             for _ in range(r)], nrows=m)
    if rank(R) == 0:
        return
    basis = lattice_basis(A)
    out = lattice_subspace_intersection(basis, R)
    assert out.ncols == rank(R)
    span_check = R
    for c in out.columns():
        assert rank(span_check.hstack(Matrix.from_columns([c]))) == rank(R)
        assert member(basis, c)[0]
    # every small lattice point of L(A) in R is an integer combination of out
    for y in product(range(-3, 4), repeat=m):
        v = basis.B @ y
        if rank(R.hstack(Matrix.from_columns([v]))) != rank(R):
            continue
        coef = _solve_integer(out, v)
        assert coef is not None, (v, out)


def _solve_integer(Bcols, v):
    from fractions import Fraction
    from dagg.exact_linalg import rational_kernel_basis
    # v = Bcols c; Bcols has independent columns so c is unique
    aug = Bcols.hstack(Matrix.from_columns([v]))
    K = rational_kernel_basis(aug)
    if K.ncols != 1 or K[aug.ncols - 1, 0] == 0:
        return None if any(v) else (0,) * Bcols.ncols
    k = K.col(0)
    c = [Fraction(-x, k[-1]) for x in k[:-1]]
    return c if all(x.denominator == 1 for x in c) else None
