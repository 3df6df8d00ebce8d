"""Exact polyhedral-cone geometry for the cone C(A) = {Ax : x >= 0}."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import NotPointed
from .exact_linalg import (
    Matrix,
    dot,
    hnf,
    hnf_rank,
    infinity_norm,
    primitive,
)


class LPResult(NamedTuple):
    feasible: bool
    witness: tuple | None


def lp_feasible(A_eq=None, b_eq=None, A_ub=None, b_ub=None, *,
                nvars: int | None = None, free: Sequence[int] = ()) -> LPResult:
    """Decide feasibility of ``A_eq x = b_eq, A_ub x <= b_ub`` exactly.

    Variables are nonnegative except those listed in ``free``.  Phase-1
    simplex on a Fraction tableau with Bland's rule, so it always
    terminates.  The witness is a basic feasible point.
    """
    A_eq = [list(r) for r in (A_eq.rows if isinstance(A_eq, Matrix) else A_eq or [])]
    A_ub = [list(r) for r in (A_ub.rows if isinstance(A_ub, Matrix) else A_ub or [])]
    b_eq = list(b_eq or [])
    b_ub = list(b_ub or [])
    if len(A_eq) != len(b_eq) or len(A_ub) != len(b_ub):
        raise ValueError("constraint rows and right-hand sides differ in length")
    if nvars is None:
        if A_eq:
            nvars = len(A_eq[0])
        elif A_ub:
            nvars = len(A_ub[0])
        else:
            raise ValueError("nvars is required when there are no constraints")
    free = set(free)

    # column layout: one column per nonnegative var, two (+/-) per free var,
    # then one slack per <= row, then one artificial per row
    var_cols = []
    ncol = 0
    for j in range(nvars):
        if j in free:
            var_cols.append((ncol, ncol + 1))
            ncol += 2
        else:
            var_cols.append((ncol, None))
            ncol += 1
    n_struct = ncol
    n_slack = len(A_ub)
    nrows = len(A_eq) + len(A_ub)
    total = n_struct + n_slack + nrows

    tab = []
    for k, (coeffs, rhs, slack) in enumerate(
        [(r, b, None) for r, b in zip(A_eq, b_eq)]
        + [(r, b, i) for i, (r, b) in enumerate(zip(A_ub, b_ub))]
    ):
        row = [Fraction(0)] * (total + 1)
        for j, a in enumerate(coeffs):
            pos, neg = var_cols[j]
            row[pos] = Fraction(a)
            if neg is not None:
                row[neg] = -Fraction(a)
        if slack is not None:
            row[n_struct + slack] = Fraction(1)
        row[total] = Fraction(rhs)
        if row[total] < 0:
            row = [-x for x in row]
        row[n_struct + n_slack + k] = Fraction(1)
        tab.append(row)
    basis = [n_struct + n_slack + k for k in range(nrows)]
    n_art_start = n_struct + n_slack

    obj = [Fraction(0)] * (total + 1)
    for row in tab:
        for j in range(n_art_start):
            obj[j] -= row[j]
        obj[total] -= row[total]

    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                key = (row[total] / row[enter], basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen: phase-1 objective is bounded below
            break
        i = best[1]
        prow = tab[i]
        piv = prow[enter]
        prow = [x / piv for x in prow]
        tab[i] = prow
        for k, row in enumerate(tab):
            if k != i and row[enter] != 0:
                f = row[enter]
                tab[k] = [a - f * b for a, b in zip(row, prow)]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, prow)]
        basis[i] = enter

    if obj[total] != 0:
        return LPResult(False, None)
    values = [Fraction(0)] * total
    for i, bv in enumerate(basis):
        values[bv] = tab[i][total]
    x = []
    for pos, neg in var_cols:
        v = values[pos] - (values[neg] if neg is not None else 0)
        x.append(v.numerator if v.denominator == 1 else v)
    return LPResult(True, tuple(x))


def in_cone(A: Matrix, y) -> LPResult:
    """Is y a nonnegative combination of the columns of A?"""
    return lp_feasible(A, tuple(y), nvars=A.ncols)


@dataclass(frozen=True)
class ConeDecomposition:
    r: int
    R_basis: Matrix
    lineal_cols: tuple[int, ...]
    pointed_cols: tuple[int, ...]
    A_R: Matrix
    A_P: Matrix

    @property
    def is_pointed(self) -> bool:
        return self.r == 0


def decompose_cone(A: Matrix) -> ConeDecomposition:
    """Split the columns of A into lineal and pointed parts.

    A column is lineal iff its negative is in C(A); the lineality space is
    spanned by the lineal columns.
    """
    m, n = A.shape
    lineal = []
    for j in range(n):
        neg = tuple(-x for x in A.col(j))
        if in_cone(A, neg).feasible:
            lineal.append(j)
    pointed = [j for j in range(n) if j not in lineal]
    A_R = A.select_columns(lineal)
    A_P = A.select_columns(pointed)
    if lineal:
        H, _ = hnf(A_R)
        r = hnf_rank(H)
        R_basis = H.select_columns(range(r))
    else:
        r = 0
        R_basis = Matrix.zeros(m, 0)
    return ConeDecomposition(r, R_basis, tuple(lineal), tuple(pointed), A_R, A_P)


@dataclass(frozen=True)
class SeparatingVector:
    h: tuple[int, ...]
    margin: Fraction

    @property
    def norm(self) -> int:
        return max((abs(x) for x in self.h), default=0)


def separating_vector(M: Matrix, margin=None) -> SeparatingVector:
    """Integer h with h . M_j >= margin for every column M_j.

    ``margin`` defaults to |M|_inf + 1.  The LP {h . M_j >= 1} gives a
    direction; h is the least multiple of its primitive integer vector that
    reaches the margin.
    """
    m, n = M.shape
    if margin is None:
        margin = infinity_norm(M) + 1
    if n == 0:
        return SeparatingVector((0,) * m, Fraction(margin))
    res = lp_feasible(A_ub=[[-x for x in c] for c in M.columns()], b_ub=[-1] * n,
                      nvars=m, free=range(m))
    if not res.feasible:
        raise NotPointed("0 is in the convex hull of the columns")
    direction = primitive(res.witness)
    low = min(dot(direction, c) for c in M.columns())
    scale = max(1, math.ceil(Fraction(margin) / low))
    h = tuple(scale * x for x in direction)
    return SeparatingVector(h, Fraction(min(dot(h, c) for c in M.columns())))
