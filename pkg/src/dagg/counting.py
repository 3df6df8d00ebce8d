"""Counting nonnegative integer solutions of a single knapsack equation.

``sum_j alpha_j x_j = beta`` is counted as the coefficient of X^beta in

* P(X) = prod_l (1 + X^a_l + ... + X^(u_l a_l))   when x <= u, and
* Q(X) = prod_l 1 / (1 - X^a_l)                   when x is unbounded.

The DP path multiplies these out exactly and is authoritative.  The
spectral paths recover the same coefficient from samples of P on the unit
circle, or of Q on the circle of radius 1/2.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import mpmath
import numpy as np

from .errors import (
    CrossCheckMismatch,
    DegreeOverflow,
    InfiniteCount,
    InvalidCoefficients,
    NonPositiveCoefficient,
    PrecisionLoss,
)

DEFAULT_DEGREE_CAP = 1 << 22
# the unbounded path runs in multiprecision, so its sample budget is far smaller
DEFAULT_UNBOUNDED_CAP = 1 << 12
EPS = float(np.finfo(float).eps)


def degree_cap() -> int:
    return int(os.environ.get("DAGG_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def unbounded_cap() -> int:
    return int(os.environ.get("DAGG_UNBOUNDED_CAP", DEFAULT_UNBOUNDED_CAP))


@dataclass(frozen=True)
class KnapsackEquation:
    alpha: tuple[int, ...]
    beta: int
    u: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "beta", int(self.beta))
        if self.u is not None:
            u = tuple(int(x) for x in self.u)
            if len(u) != len(self.alpha):
                raise InvalidCoefficients("u and alpha differ in length")
            object.__setattr__(self, "u", u)

    @property
    def bounded(self) -> bool:
        return self.u is not None

    @property
    def degree(self) -> int:
        """Degree of P(X); only meaningful for bounded equations."""
        return sum(a * w for a, w in zip(self.alpha, self.u))


@dataclass(frozen=True)
class CountResult:
    count: int | None
    method: str
    feasible: bool
    spectral_error_bound: float | None = None
    samples_used: int | None = None
    estimate: float | None = None


def _check(eq: KnapsackEquation):
    if any(a < 0 for a in eq.alpha):
        raise InvalidCoefficients("alpha must be nonnegative")
    if eq.beta < 0:
        raise InvalidCoefficients("beta must be nonnegative")
    if eq.u is not None and any(w < 0 for w in eq.u):
        raise InvalidCoefficients("u must be nonnegative")


def _truncated_product(eq: KnapsackEquation, limit: int) -> dict[int, int]:
    # sparse coefficients of P or Q up to degree ``limit``
    poly = {0: 1}
    for l, a in enumerate(eq.alpha):
        top = eq.u[l] if eq.bounded else None
        nxt: dict[int, int] = {}
        for s, c in poly.items():
            if a == 0:
                nxt[s] = nxt.get(s, 0) + c * (top + 1)
                continue
            t = 0
            while (top is None or t <= top) and s + t * a <= limit:
                d = s + t * a
                nxt[d] = nxt.get(d, 0) + c
                t += 1
        poly = nxt
    return poly


def count_dp(eq: KnapsackEquation) -> CountResult:
    """Exact coefficient of X^beta by polynomial multiplication."""
    _check(eq)
    if not eq.bounded and any(a == 0 for a in eq.alpha):
        rest = KnapsackEquation(tuple(a for a in eq.alpha if a), eq.beta)
        if count_dp(rest).count:
            raise InfiniteCount("a zero coefficient on an unbounded variable")
        return CountResult(0, "dp", False)
    c = _truncated_product(eq, eq.beta).get(eq.beta, 0)
    return CountResult(c, "dp", c > 0)


def generating_coefficients(alpha, u) -> list[int]:
    """All coefficients gamma_0..gamma_D of P(X) for a bounded equation."""
    eq = KnapsackEquation(alpha, 0, u)
    _check(eq)
    D = eq.degree
    poly = _truncated_product(eq, D)
    return [poly.get(j, 0) for j in range(D + 1)]


def count_spectral_bounded(eq: KnapsackEquation, cap: int | None = None) -> CountResult:
    """gamma_beta from N >= max(D, beta) + 1 equispaced samples of f(t) = P(e^{it}).

    f is a trigonometric polynomial of degree D, so the discrete average of
    f(t_k) e^{-i beta t_k} equals the integral exactly up to rounding.  Each
    factor is evaluated as the partial geometric sum, never as a quotient.
    """
    _check(eq)
    if not eq.bounded:
        raise InvalidCoefficients("bounded spectral count needs u")
    cap = degree_cap() if cap is None else cap
    D = eq.degree
    N = max(D, eq.beta) + 1
    if N > cap:
        raise DegreeOverflow(f"{N} samples exceed the cap {cap}")
    k = np.arange(N, dtype=np.int64)
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    f = np.ones(N, dtype=complex)
    for a, w in zip(eq.alpha, eq.u):
        step = ((a % N) * k) % N
        s = np.zeros(N, dtype=complex)
        idx = np.zeros(N, dtype=np.int64)
        for _ in range(w + 1):
            s += roots[idx]
            idx = (idx + step) % N
        f *= s
    estimate = float(np.mean(f * roots[(-(eq.beta % N) * k) % N]).real)

    size = reduce(lambda acc, w: acc * (w + 1), eq.u, 1)
    terms = sum(w + 2 for w in eq.u) + 2 + math.ceil(math.log2(N))
    bound = 2 * EPS * size * terms
    if bound >= 0.5:
        raise PrecisionLoss(f"error bound {bound:.3g} too large to round")
    c = round(estimate)
    return CountResult(c, "spectral", c > 0, bound, N, estimate)


def alias_bound(beta: int, N: int, n: int) -> float:
    """sum_{t>=1} (beta + tN + 1)^(n-1) / 2^(tN), the rescaled aliasing error."""
    total = 0.0
    t = 1
    while True:
        term = math.exp((n - 1) * math.log(beta + t * N + 1) - t * N * math.log(2))
        total += term
        ratio = ((beta + (t + 1) * N + 1) / (beta + t * N + 1)) ** (n - 1) * 2.0 ** (-N)
        if ratio < 0.5 and term < 1e-30 * max(total, 1e-300):
            break
        if t > 10_000:
            break
        t += 1
    return total


def _unbounded_estimate(alpha, beta: int, N: int) -> tuple[float, float]:
    n = len(alpha)
    prec = beta + n + 2 * math.ceil(math.log2(N)) + 64
    with mpmath.workprec(prec):
        roots = [mpmath.expjpi(mpmath.mpf(2 * k) / N) for k in range(N)]
        radius = {a: mpmath.ldexp(mpmath.mpf(1), -a) for a in set(alpha)}
        acc = mpmath.mpc(0)
        for k in range(N):
            g = mpmath.mpc(1)
            for a in alpha:
                g /= 1 - radius[a] * roots[(a * k) % N]
            acc += g * roots[(-beta * k) % N]
        sigma = mpmath.ldexp(acc.real / N, beta)
    # |g| <= 2^n; each sample carries O(n) roundings of relative size 2^-prec,
    # and the average is scaled back up by 2^beta
    fp_bound = math.ldexp(n + 4 + math.log2(N), n + beta - prec + 2)
    return float(sigma), fp_bound


def count_spectral_unbounded(eq: KnapsackEquation, cap: int | None = None,
                             max_doublings: int = 12) -> CountResult:
    """sigma_beta from samples of g(t) = Q(e^{it} / 2).

    The N-point average returns sigma_beta / 2^beta plus the aliased tail
    sum_{t>=1} sigma_{beta+tN} / 2^(beta+tN); N doubles until the rescaled
    tail bound (via sigma_j <= (j+1)^(n-1)) is below 1/4 and two consecutive
    estimates round to the same integer.
    """
    if any(a <= 0 for a in eq.alpha):
        raise NonPositiveCoefficient("unbounded spectral count needs alpha > 0")
    if eq.beta < 0:
        raise InvalidCoefficients("beta must be nonnegative")
    cap = unbounded_cap() if cap is None else cap
    n = len(eq.alpha)
    N = 8
    while N <= eq.beta:
        N *= 2
    prev = None
    for _ in range(max_doublings + 1):
        if N > cap:
            raise DegreeOverflow(f"{N} samples exceed the cap {cap}")
        est, fp = _unbounded_estimate(eq.alpha, eq.beta, N)
        err = alias_bound(eq.beta, N, n) + fp
        if err < 0.25 and prev is not None and round(prev) == round(est):
            c = round(est)
            return CountResult(c, "spectral", c > 0, err, N, est)
        prev = est
        N *= 2
    raise PrecisionLoss("aliasing bound did not converge")


def count_spectral(eq: KnapsackEquation) -> CountResult:
    if eq.bounded:
        return count_spectral_bounded(eq)
    return count_spectral_unbounded(eq)


# systems -----------------------------------------------------------------


def knapsack_from_row(coeffs, rhs, u=None) -> tuple[KnapsackEquation | None, int]:
    """Integer, sign-normalized equation from one aggregated row.

    Denominators are cleared.  With bounds, x_j -> u_j - x_j flips negative
    coefficients.  Returns ``(None, 0)`` when the equation is plainly
    infeasible (negative right-hand side with nonnegative coefficients).
    The second item is the number of flipped variables.
    """
    coeffs = [Fraction(c) for c in coeffs]
    rhs = Fraction(rhs)
    den = reduce(math.lcm, [c.denominator for c in coeffs] + [rhs.denominator], 1)
    alpha = [int(c * den) for c in coeffs]
    beta = int(rhs * den)
    if beta < 0 and all(a <= 0 for a in alpha):
        alpha, beta = [-a for a in alpha], -beta
    flipped = 0
    if u is not None:
        for j, a in enumerate(alpha):
            if a < 0:
                beta -= a * u[j]
                alpha[j] = -a
                flipped += 1
    elif any(a < 0 for a in alpha):
        if all(a <= 0 for a in alpha):
            alpha, beta = [-a for a in alpha], -beta
        else:
            raise InvalidCoefficients("mixed-sign coefficients without bounds")
    g = reduce(math.gcd, alpha + [beta], 0)
    if g > 1:
        alpha = [a // g for a in alpha]
        beta //= g
    if beta < 0:
        return None, flipped
    return KnapsackEquation(tuple(alpha), beta, None if u is None else tuple(u)), flipped


def count_system(sys, agg, method: str = "both") -> CountResult:
    """Count the solutions of ``sys`` through its size-one aggregation ``agg``.

    ``method`` is ``"dp"``, ``"spectral"`` or ``"both"`` (DP count, checked
    against the spectral formula when the sample count fits under its cap).
    A weak aggregation only certifies feasibility, so ``count`` is None.
    """
    from .aggregation import Kind

    if agg.k != 1:
        raise InvalidCoefficients("counting needs an aggregation of size one")
    weak = agg.kind is Kind.WEAK
    u = agg.introduced_bounds if weak else sys.u
    coeffs, rhs = agg.apply(sys)
    eq, _ = knapsack_from_row(coeffs.row(0), rhs[0], u)
    if eq is None:
        return CountResult(None if weak else 0, method, False)
    if eq.bounded and eq.beta > eq.degree:
        return CountResult(None if weak else 0, method, False)

    if method == "dp":
        res = count_dp(eq)
    elif method == "spectral":
        res = count_spectral(eq)
    elif method == "both":
        res = count_dp(eq)
        try:
            check = count_spectral(eq)
        except (DegreeOverflow, PrecisionLoss):
            check = None
        if check is None and not eq.bounded and all(eq.alpha):
            # too many multiprecision samples; every solution has
            # x_j <= beta / alpha_j, so the box form counts the same set
            box = tuple(eq.beta // a for a in eq.alpha)
            try:
                check = count_spectral_bounded(KnapsackEquation(eq.alpha, eq.beta, box))
            except (DegreeOverflow, PrecisionLoss):
                check = None
        if check is not None:
            if check.count != res.count:
                raise CrossCheckMismatch(f"dp={res.count} spectral={check.count}")
            res = CountResult(res.count, "both", res.feasible, check.spectral_error_bound,
                              check.samples_used, check.estimate)
    else:
        raise ValueError(f"unknown method {method!r}")
    if weak:
        return CountResult(None, res.method, res.feasible, res.spectral_error_bound,
                           res.samples_used, res.estimate)
    return res
