"""The integer lattice L(A) spanned by the columns of A."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, RankDeficient
from .exact_linalg import (
    Matrix,
    hnf,
    hnf_rank,
    infinity_norm,
    integer_kernel,
    invert,
    is_integral_vector,
    rank,
    rational_kernel_basis,
    vec_inf_norm,
)


@dataclass(frozen=True)
class LatticeBasis:
    B: Matrix
    B_inv: Matrix

    @property
    def dim(self) -> int:
        return self.B.nrows


@dataclass(frozen=True)
class BoundedLatticeSpec:
    """The box {B y : |y|_inf <= M} of lattice points."""

    basis: LatticeBasis
    M: int

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("M must be >= 1")

    def contains(self, v) -> bool:
        ok, y = member(self.basis, v)
        return ok and vec_inf_norm(y) <= self.M


def lattice_basis(A: Matrix) -> LatticeBasis:
    """Square HNF basis of L(A); A must have full row rank."""
    m = A.nrows
    if rank(A) < m:
        raise RankDeficient(f"rank(A) < {m}")
    H, _ = hnf(A)
    B = H.select_columns(range(m))
    return LatticeBasis(B, invert(B))


def member(basis: LatticeBasis, b) -> tuple[bool, tuple | None]:
    """Return ``(True, B^-1 b)`` when b is in the lattice, else ``(False, None)``."""
    b = tuple(b)
    if len(b) != basis.dim:
        raise DimensionMismatch("vector length does not match the lattice dimension")
    coords = basis.B_inv @ b
    if is_integral_vector(coords):
        return True, tuple(int(c) for c in coords)
    return False, None


def bounded_image_bound(A: Matrix, basis: LatticeBasis, u) -> int:
    """M = ceil(|B^-1 A|_inf * |u|_inf), clamped to at least 1.

    For every integer 0 <= x <= u the lattice coordinates B^-1 A x then lie
    in the box [-M, M]^m.
    """
    if any(x < 0 for x in u):
        raise ValueError("upper bounds must be nonnegative")
    A_tilde = basis.B_inv @ A
    bound = Fraction(infinity_norm(A_tilde)) * vec_inf_norm(u)
    return max(1, math.ceil(bound))


def lattice_subspace_intersection(basis: LatticeBasis, R_basis: Matrix) -> Matrix:
    """Integer basis (as columns) of L(A) intersected with span(R_basis).

    The orthogonal complement of R gives a rational P with ker P = R; the
    lattice coordinates y with P B y = 0 are an integer kernel, whose HNF-based
    basis is saturated by construction.  The result is put in column HNF.
    """
    m = basis.dim
    if R_basis.nrows != m:
        raise DimensionMismatch("R_basis must have as many rows as the lattice dimension")
    r = rank(R_basis)
    if r == 0:
        return Matrix.zeros(m, 0)
    P = rational_kernel_basis(R_basis.T).T
    if P.nrows == 0:
        Y = Matrix.identity(m)
    else:
        Y = integer_kernel(P @ basis.B)
    if Y.ncols != r:
        raise DimensionMismatch("R is not contained in the span of the basis")
    H, _ = hnf(basis.B @ Y)
    return H.select_columns(range(r))
