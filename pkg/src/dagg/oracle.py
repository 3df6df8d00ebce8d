"""Brute-force ground truth: enumerate solutions inside a box and compare."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import DimensionMismatch, WindowTooLarge
from .exact_linalg import Matrix, vec_inf_norm, vec_one_norm

DEFAULT_ENUM_CAP = 10**7


def enum_cap() -> int:
    return int(os.environ.get("DAGG_ENUM_CAP", DEFAULT_ENUM_CAP))


@dataclass(frozen=True)
class SolutionSet:
    solutions: tuple[tuple[int, ...], ...]
    window: tuple[int, ...]
    complete_within_window: bool = True

    def __len__(self):
        return len(self.solutions)

    def __contains__(self, x):
        return tuple(x) in set(self.solutions)

    def as_set(self) -> set:
        return set(self.solutions)


def box_size(window) -> int:
    return reduce(lambda acc, w: acc * (w + 1), window, 1)


def enumerate_solutions(matrix: Matrix, rhs, window, cap: int | None = None,
                        limit: int | None = None) -> SolutionSet:
    """All integer x with 0 <= x <= window and ``matrix @ x == rhs`` exactly.

    Depth-first over the coordinates.  A branch is cut as soon as some row's
    residual falls outside the range the remaining coordinates can still
    reach; the last coordinate is solved for instead of scanned.  ``limit``
    stops after that many solutions (the set is then marked incomplete).
    """
    window = tuple(int(w) for w in window)
    n = matrix.ncols
    if len(window) != n:
        raise DimensionMismatch("window length differs from the number of variables")
    if any(w < 0 for w in window):
        raise ValueError("window must be nonnegative")
    cap = enum_cap() if cap is None else cap
    if box_size(window) > cap:
        raise WindowTooLarge(f"box of {box_size(window)} points exceeds cap {cap}")

    rows = []
    rhs_int = []
    for row, r in zip(matrix.rows, rhs):
        den = reduce(math.lcm, [Fraction(x).denominator for x in row] + [Fraction(r).denominator], 1)
        rows.append([int(Fraction(x) * den) for x in row])
        rhs_int.append(int(Fraction(r) * den))
    m = len(rows)

    # reachable range of sum_{k>=j} a_ik x_k over the remaining box
    lo = [[0] * m for _ in range(n + 1)]
    hi = [[0] * m for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        for i in range(m):
            a = rows[i][j] * window[j]
            lo[j][i] = lo[j + 1][i] + min(0, a)
            hi[j][i] = hi[j + 1][i] + max(0, a)

    found: list[tuple[int, ...]] = []
    x = [0] * n
    stopped = False

    def feasible(j, resid):
        lj, hj = lo[j], hi[j]
        return all(lj[i] <= resid[i] <= hj[i] for i in range(m))

    def last(resid):
        j = n - 1
        col = [rows[i][j] for i in range(m)]
        piv = next((i for i in range(m) if col[i]), None)
        if piv is None:
            candidates = range(window[j] + 1) if not any(resid) else ()
        else:
            v, rem = divmod(resid[piv], col[piv])
            ok = rem == 0 and 0 <= v <= window[j] and all(
                resid[i] == col[i] * v for i in range(m))
            candidates = (v,) if ok else ()
        for v in candidates:
            x[j] = v
            found.append(tuple(x))

    def dfs(j, resid):
        nonlocal stopped
        if stopped or not feasible(j, resid):
            return
        if j == n - 1:
            last(resid)
            if limit is not None and len(found) >= limit:
                stopped = True
            return
        col = [rows[i][j] for i in range(m)]
        for v in range(window[j] + 1):
            x[j] = v
            dfs(j + 1, [resid[i] - col[i] * v for i in range(m)])
            if stopped:
                return
        x[j] = 0

    if n == 0:
        if not any(rhs_int):
            found.append(())
    else:
        dfs(0, rhs_int)
    return SolutionSet(tuple(found), window, complete_within_window=not stopped)


def enumerate_system(sys, window=None, cap=None, limit=None) -> SolutionSet:
    """Solutions of ``A x = b`` in the window (defaults to the system bounds)."""
    window = sys.u if window is None else window
    if window is None:
        raise ValueError("an unbounded system needs an explicit window")
    return enumerate_solutions(sys.A, sys.b, window, cap, limit)


@dataclass(frozen=True)
class Certificate:
    equal: bool
    counterexample: tuple[int, ...] | None
    window: tuple[int, ...]
    original_count: int
    aggregated_count: int


def certify_strong(sys, T, window=None, cap=None) -> Certificate:
    """Compare the solutions of ``A x = b`` and ``T A x = T b`` inside the window.

    ``T`` may be a Matrix or an AggregationMatrix.  A counterexample is the
    first spurious aggregated solution in colexicographic order (last
    coordinate most significant), so 3x+3y=6 against {(1,1)} reports (2,0).
    """
    if not isinstance(T, Matrix):
        T = T.T
    window = sys.u if window is None else window
    if window is None:
        raise ValueError("an unbounded system needs an explicit window")
    window = tuple(int(w) for w in window)
    original = enumerate_solutions(sys.A, sys.b, window, cap)
    aggregated = enumerate_solutions(T @ sys.A, T @ sys.b, window, cap)
    orig = original.as_set()
    agg = aggregated.as_set()
    colex = lambda x: x[::-1]
    spurious = sorted((x for x in aggregated.solutions if x not in orig), key=colex)
    missing = sorted((x for x in original.solutions if x not in agg), key=colex)
    cex = spurious[0] if spurious else (missing[0] if missing else None)
    return Certificate(cex is None, cex, window, len(orig), len(agg))


def single_row_window(coeffs, rhs) -> tuple[int, ...] | None:
    """Per-coordinate bound x_j <= rhs / a_j when every coefficient is positive."""
    coeffs = [Fraction(c) for c in coeffs]
    if not coeffs or any(c <= 0 for c in coeffs):
        return None
    rhs = Fraction(rhs)
    if rhs < 0:
        return (0,) * len(coeffs)
    return tuple(math.floor(rhs / c) for c in coeffs)


def pointed_window(sys, agg) -> tuple[int, ...]:
    """A box holding every solution of both systems for a pointed aggregation.

    The separating-vector bound (|h|_inf + 1) |b|_1 caps the 1-norm of any
    solution of the aggregated row; the row itself can only tighten it.
    """
    h = agg.provenance.h[0]
    W = (vec_inf_norm(h) + 1) * vec_one_norm(sys.b)
    coeffs, rhs = agg.apply(sys)
    tight = single_row_window(coeffs.row(0), rhs[0])
    if tight is None:
        return (W,) * sys.n
    return tuple(min(W, t) for t in tight)
