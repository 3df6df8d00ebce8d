"""Dense exact matrices over Z and Q, and the kernels built on them.

Entries are Python ``int`` or :class:`fractions.Fraction`; nothing here ever
touches floating point.  Matrices are small (tens of rows/columns), so a
tuple-of-rows representation is plenty.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

Scalar = int | Fraction
Vector = tuple


def _normalize(x) -> Scalar:
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _normalize(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return _normalize(Fraction(x))
    raise TypeError(f"unsupported entry type {type(x).__name__}")


class Matrix:
    """Immutable dense matrix with exact entries.

    Integral entries are stored as ``int`` so integer matrices stay cheap;
    ``Fraction`` only appears where a denominator is actually needed.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(_normalize(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # construction ------------------------------------------------------

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [tuple(c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("nrows is required for a matrix with no columns")
            nrows = len(cols[0])
        for c in cols:
            if len(c) != nrows:
                raise DimensionMismatch("ragged columns")
        return cls((tuple(c[i] for c in cols) for i in range(nrows)), ncols=len(cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(((1 if i == j else 0 for j in range(n)) for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls(((0,) * n for _ in range(m)), ncols=n)

    @classmethod
    def row_vector(cls, v: Sequence) -> "Matrix":
        return cls([tuple(v)], ncols=len(v))

    # access --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    def row(self, i: int) -> tuple:
        if not 0 <= i < self.nrows:
            raise IndexError(f"row {i} out of range for {self.shape} matrix")
        return self._rows[i]

    def col(self, j: int) -> tuple:
        if not 0 <= j < self.ncols:
            raise IndexError(f"column {j} out of range for {self.shape} matrix")
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self._rows) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"index {ij} out of range for {self.shape} matrix")
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    # algebra -------------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix.from_columns(self._rows, nrows=self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cols = other.columns()
            return Matrix(
                (tuple(dot(r, c) for c in cols) for r in self._rows), ncols=other.ncols
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(v)}")
        return tuple(_normalize(dot(r, v)) for r in self._rows)

    def __neg__(self):
        return Matrix((tuple(-x for x in r) for r in self._rows), ncols=self.ncols)

    def scale(self, s) -> "Matrix":
        return Matrix((tuple(s * x for x in r) for r in self._rows), ncols=self.ncols)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix((tuple(r[j] for j in idx) for r in self._rows), ncols=len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix((self._rows[i] for i in idx), ncols=self.ncols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack needs equal row counts")
        return Matrix((a + b for a, b in zip(self._rows, other._rows)),
                      ncols=self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix(self._rows + other._rows, ncols=self.ncols)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._rows for x in r)

    def denominator(self) -> int:
        """Least common multiple of all entry denominators."""
        return reduce(lcm, (Fraction(x).denominator for r in self._rows for x in r), 1)


# vectors -----------------------------------------------------------------


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def vec_inf_norm(v) -> Scalar:
    return max((abs(x) for x in v), default=0)


def vec_one_norm(v) -> Scalar:
    return sum((abs(x) for x in v), 0)


def infinity_norm(M: Matrix) -> Scalar:
    """Induced infinity norm: the largest absolute row sum."""
    return max((vec_one_norm(r) for r in M.rows), default=0)


def one_norm(M: Matrix) -> Scalar:
    """Induced 1-norm: the largest absolute column sum."""
    return max((vec_one_norm(c) for c in M.columns()), default=0)


def primitive(v) -> tuple[int, ...]:
    """Smallest positive multiple of a rational vector that is integral."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    ints = [int(Fraction(x) * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def clear_row_denominators(M: Matrix) -> Matrix:
    """Scale each row by the lcm of its denominators (same row space, integer)."""
    out = []
    for r in M.rows:
        den = reduce(lcm, (Fraction(x).denominator for x in r), 1)
        out.append(tuple(int(Fraction(x) * den) for x in r))
    return Matrix(out, ncols=M.ncols)


def is_integral_vector(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


# Hermite normal form -----------------------------------------------------


def hnf(M: Matrix) -> tuple[Matrix, Matrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H = M @ U``, ``U`` unimodular, and ``H`` lower
    echelon: the first ``rank`` columns carry positive pivots on strictly
    increasing rows, entries left of a pivot lie in ``[0, pivot)``, and the
    remaining columns are zero.
    """
    if not M.is_integral():
        raise TypeError("hnf needs an integer matrix")
    m, n = M.shape
    cols = [list(c) for c in M.columns()]
    ucols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]

    def addmul(dst, src, q):
        # column dst -= q * column src
        cd, cs = cols[dst], cols[src]
        for i in range(m):
            cd[i] -= q * cs[i]
        ud, us = ucols[dst], ucols[src]
        for i in range(n):
            ud[i] -= q * us[i]

    def swap(a, b):
        cols[a], cols[b] = cols[b], cols[a]
        ucols[a], ucols[b] = ucols[b], ucols[a]

    def negate(a):
        cols[a] = [-x for x in cols[a]]
        ucols[a] = [-x for x in ucols[a]]

    piv = 0
    for i in range(m):
        if piv == n:
            break
        found = False
        while True:
            live = [j for j in range(piv, n) if cols[j][i] != 0]
            if not live:
                break
            found = True
            j0 = min(live, key=lambda j: abs(cols[j][i]))
            if j0 != piv:
                swap(j0, piv)
            p = cols[piv][i]
            done = True
            for j in range(piv + 1, n):
                if cols[j][i]:
                    addmul(j, piv, cols[j][i] // p)
                    if cols[j][i]:
                        done = False
            if done:
                break
        if not found:
            continue
        if cols[piv][i] < 0:
            negate(piv)
        p = cols[piv][i]
        for j in range(piv):
            q = cols[j][i] // p
            if q:
                addmul(j, piv, q)
        piv += 1

    return Matrix.from_columns(cols, nrows=m), Matrix.from_columns(ucols, nrows=n)


def hnf_rank(H: Matrix) -> int:
    """Number of nonzero columns of a matrix already in column HNF."""
    return sum(1 for c in H.columns() if any(c))


def integer_kernel(M: Matrix) -> Matrix:
    """Lattice basis (as columns) of ``{y in Z^n : M y = 0}`` for rational M."""
    n = M.ncols
    H, U = hnf(clear_row_denominators(M))
    k = hnf_rank(H)
    return U.select_columns(range(k, n))


# elimination -------------------------------------------------------------


def _rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    rows = [[Fraction(x) for x in r] for r in M.rows]
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rational_kernel_basis(M: Matrix) -> Matrix:
    """Basis of the null space of M, one primitive integer vector per column.

    Each basis vector has a free coordinate equal to a positive integer, so
    the output is deterministic.  A full column rank M yields an n x 0 matrix.
    """
    n = M.ncols
    rows, pivots = _rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(primitive(v))
    return Matrix.from_columns(basis, nrows=n)


def rank(M: Matrix) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in clear_row_denominators(M).rows]
    m, n = M.shape
    rk = 0
    prev = 1
    for c in range(n):
        if rk == m:
            break
        p = next((i for i in range(rk, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[rk], rows[p] = rows[p], rows[rk]
        piv = rows[rk][c]
        for i in range(rk + 1, m):
            rows[i] = [(piv * rows[i][j] - rows[i][c] * rows[rk][j]) // prev
                       for j in range(n)]
        prev = piv
        rk += 1
    return rk


def det(M: Matrix) -> Scalar:
    if M.nrows != M.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [[Fraction(x) for x in r] for r in M.rows]
    n = M.nrows
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return _normalize(d)


def invert(M: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrix when det(M) == 0."""
    n = M.nrows
    if M.ncols != n:
        raise DimensionMismatch("inverse of a non-square matrix")
    aug = M.hstack(Matrix.identity(n))
    rows, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Matrix((r[n:] for r in rows), ncols=n)


def solve(M: Matrix, b) -> tuple:
    """Unique solution of the square nonsingular system M x = b."""
    return invert(M) @ b
