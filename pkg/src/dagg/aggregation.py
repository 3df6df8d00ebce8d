"""Strong and weak aggregation of linear Diophantine systems.

A system ``A x = b, x >= 0 integer`` (optionally ``x <= u``) is replaced by
``T A x = T b`` with a rational k x m matrix T.  Strong aggregations keep the
solution set; weak ones (with an added box on x) keep feasibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .cone import decompose_cone, in_cone, separating_vector
from .coprime import coprime_above
from .errors import (
    InfeasibleByLattice,
    NotPointed,
    RankDeficient,
    UnsupportedRegime,
    WitnessNotFound,
)
from .exact_linalg import (
    Matrix,
    infinity_norm,
    invert,
    one_norm,
    rank,
    rational_kernel_basis,
    vec_inf_norm,
    vec_one_norm,
)
from .lattice import bounded_image_bound, lattice_basis, lattice_subspace_intersection, member


@dataclass(frozen=True)
class DiophantineSystem:
    A: Matrix
    b: tuple
    u: tuple | None = None

    def __post_init__(self):
        A = self.A if isinstance(self.A, Matrix) else Matrix(self.A)
        object.__setattr__(self, "A", A)
        b = tuple(int(x) for x in self.b)
        if len(b) != A.nrows:
            raise ValueError(f"b has length {len(b)}, expected {A.nrows}")
        if not A.is_integral():
            raise ValueError("A must be an integer matrix")
        object.__setattr__(self, "b", b)
        if self.u is not None:
            u = tuple(int(x) for x in self.u)
            if len(u) != A.ncols:
                raise ValueError(f"u has length {len(u)}, expected {A.ncols}")
            if any(x < 0 for x in u):
                raise ValueError("upper bounds must be nonnegative")
            object.__setattr__(self, "u", u)

    @property
    def m(self) -> int:
        return self.A.nrows

    @property
    def n(self) -> int:
        return self.A.ncols

    @property
    def bounded(self) -> bool:
        return self.u is not None

    def with_bounds(self, u) -> "DiophantineSystem":
        return DiophantineSystem(self.A, self.b, tuple(u))

    def is_solution(self, x) -> bool:
        if len(x) != self.n or any(v < 0 for v in x):
            return False
        if self.u is not None and any(v > w for v, w in zip(x, self.u)):
            return False
        return self.A @ x == self.b


class Kind(str, Enum):
    STRONG = "strong"
    WEAK = "weak"


@dataclass(frozen=True)
class Provenance:
    method: str
    M: int | None = None
    C: int | None = None
    q: tuple[int, ...] = ()
    h: tuple[tuple[int, ...], ...] = ()
    r: int | None = None


@dataclass(frozen=True)
class AggregationMatrix:
    T: Matrix
    kind: Kind
    introduced_bounds: tuple | None = None
    provenance: Provenance = field(default_factory=lambda: Provenance("given"))

    @property
    def k(self) -> int:
        return self.T.nrows

    def apply(self, sys: DiophantineSystem) -> tuple[Matrix, tuple]:
        """Coefficients and right-hand side of the aggregated system."""
        return self.T @ sys.A, self.T @ sys.b


def _require_full_rank(A: Matrix):
    if rank(A) < A.nrows:
        raise RankDeficient(f"rank(A) < m = {A.nrows}")


def _normalize_last(t) -> tuple:
    """Scale a kernel vector so that its last nonzero coordinate is -1."""
    t = [Fraction(x) for x in t]
    pivot = next(x for x in reversed(t) if x != 0)
    return tuple(x / -pivot for x in t)


# bounded systems ---------------------------------------------------------


def aggregate_bounded(sys: DiophantineSystem) -> AggregationMatrix:
    """Size-one strong aggregation of a bounded system 0 <= x <= u.

    With B a lattice basis and beta = B^-1 b, every y = A x - b over the box
    has lattice coordinates below C = M + |beta|_inf + 1 in absolute value.
    The hyperplane orthogonal to all B_i + B_m / q_i (q_i pairwise coprime,
    q_i > C) meets none of those y except 0.
    """
    if sys.u is None:
        raise ValueError("aggregate_bounded needs upper bounds u")
    A, m = sys.A, sys.m
    basis = lattice_basis(A)
    ok, beta = member(basis, sys.b)
    if not ok:
        raise InfeasibleByLattice("b is not in L(A)")
    M = bounded_image_bound(A, basis, sys.u)
    C = M + vec_inf_norm(beta) + 1
    if m == 1:
        return AggregationMatrix(Matrix([[1]]), Kind.STRONG,
                                 provenance=Provenance("bounded", M=M, C=C))
    qs = coprime_above(m - 1, C).moduli
    cols = basis.B.columns()
    last = cols[m - 1]
    Lam = Matrix(
        [tuple(Fraction(a) + Fraction(c, q) for a, c in zip(cols[i], last))
         for i, q in enumerate(qs)],
        ncols=m,
    )
    ker = rational_kernel_basis(Lam)
    if ker.ncols != 1:
        raise RankDeficient("rank(Lambda) != m - 1")
    t = _normalize_last(ker.col(0))
    return AggregationMatrix(Matrix([t]), Kind.STRONG,
                             provenance=Provenance("bounded", M=M, C=C, q=qs))


def aggregate_bounded_explicit(sys: DiophantineSystem) -> AggregationMatrix:
    """T = (1/q_1, ..., 1/q_{m-1}, -1) with q_i pairwise coprime > M' + |b|_inf.

    M' = |A|_inf |u|_inf bounds |A x|_inf on the box, so no lattice basis is
    needed: Z^m itself plays the role of the lattice.
    """
    if sys.u is None:
        raise ValueError("aggregate_bounded_explicit needs upper bounds u")
    m = sys.m
    M_prime = infinity_norm(sys.A) * vec_inf_norm(sys.u)
    C = M_prime + vec_inf_norm(sys.b)
    if m == 1:
        return AggregationMatrix(Matrix([[-1]]), Kind.STRONG,
                                 provenance=Provenance("explicit", M=M_prime, C=C))
    qs = coprime_above(m - 1, max(C, 1)).moduli
    T = Matrix([[Fraction(1, q) for q in qs] + [-1]])
    return AggregationMatrix(T, Kind.STRONG,
                             provenance=Provenance("explicit", M=M_prime, C=C, q=qs))


# unbounded systems -------------------------------------------------------


def _separation_margin(M: Matrix) -> int:
    # |eta . M_j| <= |eta|_inf * |M_j|_1, so the column norm must be covered
    # as well for (h + eta) . M_j >= 1 to hold for every |eta|_inf <= 1
    return max(infinity_norm(M), one_norm(M)) + 1


def pointed_bound(A: Matrix, h, b) -> int:
    """|A|_inf (|h|_inf + 1) |b|_1 + |b|_inf."""
    return infinity_norm(A) * (vec_inf_norm(h) + 1) * vec_one_norm(b) + vec_inf_norm(b)


def aggregate_pointed(sys: DiophantineSystem) -> AggregationMatrix:
    """Size-one strong aggregation when C(A) is pointed.

    T = h + (1/q_1, ..., 1/q_m) where h separates the columns of A from 0
    with T A >= 1; every y = A x - b on the hyperplane then satisfies
    |y|_inf <= M < q_i, and the coprime perturbation forces y = 0.
    """
    A, m = sys.A, sys.m
    _require_full_rank(A)
    if not decompose_cone(A).is_pointed:
        raise NotPointed("C(A) has a nontrivial lineality space")
    sep = separating_vector(A, _separation_margin(A))
    M = pointed_bound(A, sep.h, sys.b)
    qs = coprime_above(m, max(M, 1)).moduli
    T = Matrix([[h + Fraction(1, q) for h, q in zip(sep.h, qs)]])
    return AggregationMatrix(T, Kind.STRONG,
                             provenance=Provenance("pointed", M=M, q=qs, h=(sep.h,), r=0))


def aggregate_general(sys: DiophantineSystem) -> AggregationMatrix:
    """Strong aggregation of size r + 1, r = dim of the lineality space of C(A).

    Replaces the lineal columns by a lattice basis B_1..B_r of L(A) cap R plus
    B_{r+1} = -sum B_i, separates each "drop one B_l" matrix from the origin
    by an integer h_l, and perturbs the first row by (1/q_i).
    """
    A, m = sys.A, sys.m
    _require_full_rank(A)
    dec = decompose_cone(A)
    r = dec.r
    if r == 0:
        return aggregate_pointed(sys)
    if r + 1 > m:
        raise UnsupportedRegime(f"lineality dimension r = {r} leaves r + 1 > m = {m}")

    basis = lattice_basis(A)
    LR = lattice_subspace_intersection(basis, dec.R_basis)
    Bcols = LR.columns()
    Bcols.append(tuple(-sum(c[i] for c in Bcols) for i in range(m)))
    Pcols = dec.A_P.columns()
    A_tilde = Matrix.from_columns(Bcols + Pcols, nrows=m)

    hs = []
    for l in range(r + 1):
        sub = Matrix.from_columns([c for i, c in enumerate(Bcols) if i != l] + Pcols, nrows=m)
        sep = separating_vector(sub, _separation_margin(sub))
        hs.append(sep.h)
    x_bound = max(vec_inf_norm(h) + 1 for h in hs) * vec_one_norm(sys.b)
    M = infinity_norm(A_tilde) * x_bound + vec_inf_norm(sys.b)
    qs = coprime_above(m, max(M, 1)).moduli
    first = tuple(h + Fraction(1, q) for h, q in zip(hs[0], qs))
    T = Matrix([first] + [tuple(h) for h in hs[1:]], ncols=m)
    return AggregationMatrix(T, Kind.STRONG,
                             provenance=Provenance("general", M=M, q=qs, h=tuple(hs), r=r))


def aggregate_strong(sys: DiophantineSystem, explicit: bool = False) -> AggregationMatrix:
    """Pick the construction that applies to ``sys``."""
    if sys.bounded:
        return aggregate_bounded_explicit(sys) if explicit else aggregate_bounded(sys)
    return aggregate_general(sys)


# weak aggregation --------------------------------------------------------


def hadamard_bound(A: Matrix, b) -> int:
    """ceil of the product of the Euclidean row norms of (A | b)."""
    prod = 1
    for row, bi in zip(A.rows, b):
        prod *= sum(x * x for x in row) + bi * bi
    if prod == 0:
        return 0
    return math.isqrt(prod - 1) + 1


def weak_bounds(sys: DiophantineSystem) -> tuple[int, ...]:
    """Box u*_j = (n + 1) * Delta that contains a solution whenever one exists."""
    delta = hadamard_bound(sys.A, sys.b)
    return ((sys.n + 1) * delta,) * sys.n


def aggregate_weak(sys: DiophantineSystem) -> AggregationMatrix:
    A = sys.A
    _require_full_rank(A)
    u_star = weak_bounds(sys)
    strong = aggregate_bounded(DiophantineSystem(A, sys.b, u_star))
    prov = strong.provenance
    return AggregationMatrix(
        strong.T, Kind.WEAK, introduced_bounds=u_star,
        provenance=Provenance("weak", M=prov.M, C=prov.C, q=prov.q),
    )


# size lower bound --------------------------------------------------------


def lower_bound_witness(sys: DiophantineSystem, T: Matrix, x_star) -> tuple[int, ...]:
    """A solution of T A x = T b, x >= 0 integer, that violates A x = b.

    Exists for any T with k <= r rows as soon as x_star solves the system.
    Finds a nonzero rational y in ker(T) cap C(A), writes y = A x~ with
    x~ >= 0, and returns x_star + lam * x~ for the least lam making it integral.
    """
    A, m = sys.A, sys.m
    x_star = tuple(int(v) for v in x_star)
    if T.ncols != m:
        raise WitnessNotFound("T has the wrong number of columns")
    if A @ x_star != sys.b or any(v < 0 for v in x_star):
        raise WitnessNotFound("x_star does not solve the system")
    dec = decompose_cone(A)
    if T.nrows > dec.r:
        raise WitnessNotFound(f"T has {T.nrows} rows but r = {dec.r}")

    H_basis = rational_kernel_basis(T)
    y = None
    if dec.r:
        common = rational_kernel_basis(T @ dec.R_basis)
        if common.ncols:
            y = dec.R_basis @ common.col(0)
    if y is None:
        # ker(T) and R are complementary: project a pointed column along R
        if not dec.pointed_cols or H_basis.ncols == 0:
            raise WitnessNotFound("no nonzero vector in ker(T) cap C(A)")
        y_hat = A.col(dec.pointed_cols[0])
        split = H_basis.hstack(dec.R_basis)
        coef = invert(split) @ y_hat
        y = H_basis @ coef[: H_basis.ncols]

    res = in_cone(A, y)
    if not res.feasible:
        raise WitnessNotFound("kernel vector not in C(A)")
    lam = math.lcm(*(Fraction(v).denominator for v in res.witness))
    x_T = tuple(int(a + lam * Fraction(v)) for a, v in zip(x_star, res.witness))
    if T @ (A @ x_T) != T @ sys.b or A @ x_T == sys.b:
        raise WitnessNotFound("constructed point failed verification")
    return x_T
