"""Random desk-scale instances for experiments and tests.

Every generator takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random

from .aggregation import DiophantineSystem
from .counting import KnapsackEquation
from .exact_linalg import Matrix, dot, rank, rational_kernel_basis


def _random_matrix(rng: random.Random, m: int, n: int, amax: int) -> Matrix:
    return Matrix([[rng.randint(-amax, amax) for _ in range(n)] for _ in range(m)])


def _full_rank(rng, m, n, amax) -> Matrix:
    while True:
        A = _random_matrix(rng, m, n, amax)
        if rank(A) == m:
            return A


def random_bounded_system(rng: random.Random, m: int | None = None, n: int | None = None,
                          amax: int = 5, umax: int = 4) -> tuple[DiophantineSystem, tuple]:
    """Full-rank A, bounds u, and b = A x0 for a random feasible x0 <= u."""
    m = rng.randint(2, 4) if m is None else m
    n = rng.randint(m + 1, 6) if n is None else n
    A = _full_rank(rng, m, n, amax)
    u = tuple(rng.randint(0, umax) for _ in range(n))
    x0 = tuple(rng.randint(0, w) for w in u)
    return DiophantineSystem(A, A @ x0, u), x0


def _halfspace_vector(rng, d, amax):
    while True:
        v = tuple(rng.randint(-amax, amax) for _ in d)
        if dot(d, v) > 0:
            return v


def random_pointed_system(rng: random.Random, m: int | None = None, n: int | None = None,
                          amax: int = 3, xmax: int = 2) -> tuple[DiophantineSystem, tuple]:
    """Columns drawn from a random open halfspace {a : d.a > 0}, so C(A) is pointed."""
    m = rng.randint(1, 3) if m is None else m
    n = rng.randint(m, min(m + 2, 4)) if n is None else n
    while True:
        d = tuple(rng.randint(-2, 2) for _ in range(m))
        if any(d):
            break
    while True:
        A = Matrix.from_columns([_halfspace_vector(rng, d, amax) for _ in range(n)], nrows=m)
        if rank(A) == m:
            break
    x0 = tuple(rng.randint(0, xmax) for _ in range(n))
    return DiophantineSystem(A, A @ x0), x0


def random_lineal_system(rng: random.Random, r: int | None = None, m: int | None = None,
                         amax: int = 3, xmax: int = 2) -> tuple[DiophantineSystem, tuple, int]:
    """A system whose cone has lineality space of dimension exactly r < m.

    Lineal columns v_1..v_r and -(v_1 + ... + v_r) span R positively; the
    pointed columns lie in {a : d.a > 0} for some d orthogonal to R.
    """
    r = rng.choice((1, 2)) if r is None else r
    m = rng.randint(r + 1, min(r + 2, 4)) if m is None else m
    while True:
        V = Matrix.from_columns([tuple(rng.randint(-amax, amax) for _ in range(m))
                                 for _ in range(r)], nrows=m)
        if rank(V) != r:
            continue
        perp = rational_kernel_basis(V.T)
        weights = [rng.randint(-2, 2) for _ in range(perp.ncols)]
        d = perp @ weights
        if not any(d):
            continue
        lineal = V.columns() + [tuple(-sum(c[i] for c in V.columns()) for i in range(m))]
        n_pointed = rng.randint(m - r, m - r + 1)
        pointed = [_halfspace_vector(rng, d, amax) for _ in range(n_pointed)]
        cols = lineal + pointed
        rng.shuffle(cols)
        A = Matrix.from_columns(cols, nrows=m)
        if rank(A) == m:
            break
    x0 = tuple(rng.randint(0, xmax) for _ in range(A.ncols))
    return DiophantineSystem(A, A @ x0), x0, r


def random_weak_system(rng: random.Random, amax: int = 2, bmax: int = 3) -> DiophantineSystem:
    """Small system, feasible or not: half get b = A x0, half a random b."""
    m = rng.randint(1, 2)
    n = rng.randint(m + 1, 3)
    A = _full_rank(rng, m, n, amax)
    if rng.random() < 0.5:
        x0 = tuple(rng.randint(0, 2) for _ in range(n))
        b = A @ x0
    else:
        b = tuple(rng.randint(-bmax, bmax) for _ in range(m))
    return DiophantineSystem(A, b)


def random_knapsack(rng: random.Random, bounded: bool | None = None, nmax: int = 5,
                    amax: int = 6, bmax: int = 60, umax: int = 5) -> KnapsackEquation:
    bounded = rng.random() < 0.5 if bounded is None else bounded
    n = rng.randint(1, nmax)
    if bounded:
        alpha = tuple(rng.randint(0, amax) for _ in range(n))
        u = tuple(rng.randint(0, umax) for _ in range(n))
        return KnapsackEquation(alpha, rng.randint(0, bmax), u)
    alpha = tuple(rng.randint(1, amax) for _ in range(n))
    return KnapsackEquation(alpha, rng.randint(0, bmax))
