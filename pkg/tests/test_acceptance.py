"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Every random instance comes from a seeded ``random.Random`` so failures
are reproducible by criterion number and index.
"""

import random
import time
from fractions import Fraction
from math import gcd, prod

import pytest

from dagg.aggregation import (
    DiophantineSystem,
    aggregate_bounded,
    aggregate_bounded_explicit,
    aggregate_general,
    aggregate_pointed,
    aggregate_weak,
    weak_bounds,
)
from dagg.cone import in_cone
from dagg.coprime import coprime_above
from dagg.counting import (
    KnapsackEquation,
    count_dp,
    count_spectral,
    count_system,
    generating_coefficients,
)
from dagg.errors import InfeasibleByLattice
from dagg.exact_linalg import Matrix, det, hnf, hnf_rank, rank, vec_inf_norm
from dagg.instances import (
    random_bounded_system,
    random_knapsack,
    random_lineal_system,
    random_pointed_system,
    random_weak_system,
)
from dagg.lattice import lattice_basis, member
from dagg.oracle import certify_strong, enumerate_solutions, pointed_window

pytestmark = pytest.mark.acceptance


def _bounded_instances():
    rng = random.Random(20240502)
    return [random_bounded_system(rng)[0] for _ in range(500)]


@pytest.fixture(scope="module")
def bounded_instances():
    return _bounded_instances()


def test_criterion_1_worked_example(record_criterion):
    t0 = time.perf_counter()
    A, b = Matrix([[1, 2], [2, 1]]), (3, 3)
    sys = DiophantineSystem(A, b)
    window = (3, 3)
    orig = enumerate_solutions(A, b, window).as_set()
    strong_T, weak_T = Matrix([[1, 2]]), Matrix([[1, 1]])
    strong_row = (strong_T @ A, strong_T @ b)
    weak_row = (weak_T @ A, weak_T @ b)
    ok = (
        orig == {(1, 1)}
        and strong_row == (Matrix([[5, 4]]), (9,))
        and enumerate_solutions(*strong_row, window).as_set() == {(1, 1)}
        and weak_row == (Matrix([[3, 3]]), (6,))
        and enumerate_solutions(*weak_row, window).as_set() == {(1, 1), (2, 0), (0, 2)}
        and certify_strong(sys, strong_T, window).equal
        and not certify_strong(sys, weak_T, window).equal
    )
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    record_criterion(1, ok, f"worked example exact, {elapsed:.3f}s (< 1s)")
    assert ok


def test_criterion_2_bounded_strong(bounded_instances, record_criterion):
    t0 = time.perf_counter()
    failures = [i for i, sys in enumerate(bounded_instances)
                if not certify_strong(sys, aggregate_bounded(sys)).equal]
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    record_criterion(2, ok, f"{len(bounded_instances) - len(failures)}/500 Equal, {elapsed:.1f}s (< 60s)")
    assert ok, failures[:5]


def test_criterion_3_explicit_form(bounded_instances, record_criterion):
    failures = []
    for i, sys in enumerate(bounded_instances):
        agg = aggregate_bounded_explicit(sys)
        q = agg.provenance.q
        threshold = agg.provenance.C
        row = agg.T.row(0)
        shape_ok = (
            agg.k == 1
            and len(q) == sys.m - 1
            and row == tuple(Fraction(1, x) for x in q) + (-1,)
            and all(x > threshold for x in q)
            and all(gcd(x, y) == 1 for j, x in enumerate(q) for y in q[j + 1:])
            and threshold >= agg.provenance.M + vec_inf_norm(sys.b)
        )
        if not (shape_ok and certify_strong(sys, agg).equal):
            failures.append(i)
    ok = not failures
    record_criterion(3, ok, f"{500 - len(failures)}/500 explicit T well-formed and Equal")
    assert ok, failures[:5]


def test_criterion_4_pointed(record_criterion):
    rng = random.Random(4004)
    failures = []
    for i in range(300):
        sys, _ = random_pointed_system(rng)
        agg = aggregate_pointed(sys)
        positive = all(v >= 1 for v in (agg.T @ sys.A).row(0))
        if not (positive and certify_strong(sys, agg, pointed_window(sys, agg)).equal):
            failures.append(i)
    ok = not failures
    record_criterion(4, ok, f"{300 - len(failures)}/300 pointed T Equal in window with T.A >= 1")
    assert ok, failures[:5]


def test_criterion_5_minimum_size(record_criterion):
    from dagg.aggregation import lower_bound_witness
    rng = random.Random(5005)
    failures = []
    for i in range(100):
        sys, x0, r = random_lineal_system(rng)
        agg = aggregate_general(sys)
        ok_i = agg.k == r + 1 and certify_strong(sys, agg, (3,) * sys.n).equal
        for k in range(1, r + 1):
            T = Matrix(agg.T.rows[:k])
            x = lower_bound_witness(sys, T, x0)
            ok_i = ok_i and min(x) >= 0 and T @ (sys.A @ x) == T @ sys.b and sys.A @ x != sys.b
        if not ok_i:
            failures.append(i)
    ok = not failures
    record_criterion(5, ok, f"{100 - len(failures)}/100 size r+1 Equal, spurious witnesses for all k <= r")
    assert ok, failures[:5]


def test_criterion_6_weak(record_criterion):
    rng = random.Random(6006)
    failures = []
    feasible = 0
    for i in range(200):
        sys = random_weak_system(rng)
        try:
            agg = aggregate_weak(sys)
            box = agg.introduced_bounds
        except InfeasibleByLattice:
            agg, box = None, weak_bounds(sys)
        truth = bool(enumerate_solutions(sys.A, sys.b, box, cap=10**9, limit=1).solutions)
        feasible += truth
        if agg is None:
            weak = False
        else:
            coeffs, rhs = agg.apply(sys)
            weak = bool(enumerate_solutions(coeffs, rhs, box, cap=10**9, limit=1).solutions)
            if weak != count_system(sys, agg, "dp").feasible:
                failures.append(i)
                continue
        if weak != truth:
            failures.append(i)
    ok = not failures
    record_criterion(6, ok, f"{200 - len(failures)}/200 weak feasibility matches brute force "
                            f"({feasible} feasible)")
    assert ok, failures[:5]


def test_criterion_7_counting(record_criterion):
    rng = random.Random(7007)
    t0 = time.perf_counter()
    failures = []
    worst_bounded = 0.0
    worst_alias = 0.0
    for i in range(300):
        eq = random_knapsack(rng)
        exact = count_dp(eq).count
        res = count_spectral(eq)
        if eq.bounded:
            err = abs(res.estimate - exact)
            worst_bounded = max(worst_bounded, err)
            good = res.count == exact and err < 1e-6
        else:
            worst_alias = max(worst_alias, res.spectral_error_bound)
            good = res.count == exact and res.spectral_error_bound < 0.25
        if not good:
            failures.append(i)
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 30
    record_criterion(7, ok, f"{300 - len(failures)}/300 spectral == dp, max bounded err "
                            f"{worst_bounded:.1e}, max alias bound {worst_alias:.1e}, {elapsed:.1f}s (< 30s)")
    assert ok, failures[:5]


def test_criterion_8_coprimes(record_criterion):
    rng = random.Random(8008)
    thresholds = [1, 2, 10, 12, 13, 100, 997, 10**6] + [rng.randint(1, 10**6) for _ in range(40)]
    failures = []
    for count in range(1, 21):
        for C in thresholds:
            s = coprime_above(count, C)
            q = s.moduli
            good = (len(q) == count
                    and all(x > C for x in q)
                    and all(x <= max(s.sieve_bound, C * C) for x in q)
                    and all(gcd(x, y) == 1 for j, x in enumerate(q) for y in q[j + 1:]))
            if not good:
                failures.append((count, C))
    ok = not failures
    record_criterion(8, ok, f"{20 * len(thresholds) - len(failures)}/{20 * len(thresholds)} "
                            "coprime sets valid")
    assert ok, failures[:5]


def _random_full_rank(rng):
    m = rng.randint(1, 4)
    n = rng.randint(m, 6)
    while True:
        A = Matrix([[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)])
        if rank(A) == m:
            return A


def _in_column_hnf(H, v):
    v = list(v)
    for c in H.columns():
        if not any(c):
            continue
        i = next(k for k, x in enumerate(c) if x)
        if v[i] % c[i]:
            return False
        q = v[i] // c[i]
        v = [a - q * b for a, b in zip(v, c)]
    return not any(v)


def test_criterion_9_properties(record_criterion):
    rng = random.Random(9009)
    bad = {"lattice round-trip": 0, "HNF lattice equality": 0,
           "LP witness exactness": 0, "normalization": 0}
    for _ in range(1000):
        # lattice round-trip: b = A x is a member and B beta == b
        A = _random_full_rank(rng)
        x = tuple(rng.randint(-5, 5) for _ in range(A.ncols))
        basis = lattice_basis(A)
        ok, beta = member(basis, A @ x)
        if not (ok and basis.B @ beta == A @ x and basis.B @ basis.B_inv == Matrix.identity(A.nrows)):
            bad["lattice round-trip"] += 1

        # HNF: H = M U, U unimodular, mutual containment
        m, n = rng.randint(1, 4), rng.randint(1, 5)
        M = Matrix([[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)])
        H, U = hnf(M)
        r = hnf_rank(H)
        contains = all(_in_column_hnf(H, c) for c in M.columns())
        if not (M @ U == H and abs(det(U)) == 1 and contains and r == rank(M)):
            bad["HNF lattice equality"] += 1

        # LP witness: exact rational, nonnegative, reproduces y
        A = Matrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)])
        y = A @ tuple(rng.randint(0, 3) for _ in range(n))
        res = in_cone(A, y)
        if not (res.feasible and min(res.witness) >= 0 and A @ res.witness == y
                and all(isinstance(v, (int, Fraction)) for v in res.witness)):
            bad["LP witness exactness"] += 1

        # normalization of the bounded generating polynomial
        k = rng.randint(1, 5)
        alpha = [rng.randint(0, 6) for _ in range(k)]
        u = [rng.randint(0, 5) for _ in range(k)]
        if sum(generating_coefficients(alpha, u)) != prod(w + 1 for w in u):
            bad["normalization"] += 1
    ok = not any(bad.values())
    record_criterion(9, ok, ", ".join(f"{k} {1000 - v}/1000" for k, v in bad.items()))
    assert ok, bad
