"""``dagg`` command line: aggregate, count, verify.

Exit codes: 0 ok, 1 malformed input, 2 infeasible by lattice,
3 unsupported regime, 4 enumeration window too large.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .aggregation import (
    AggregationMatrix,
    DiophantineSystem,
    Kind,
    aggregate_pointed,
    aggregate_strong,
    aggregate_weak,
)
from .cone import decompose_cone
from .counting import count_system
from .errors import (
    DegreeOverflow,
    InfeasibleByLattice,
    PrecisionLoss,
    RankDeficient,
    UnsupportedRegime,
    WindowTooLarge,
)
from .exact_linalg import Matrix
from .oracle import certify_strong, pointed_window, single_row_window

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_UNSUPPORTED, EXIT_WINDOW = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must contain integers, got {x!r}")
    return x


def parse_system(doc) -> DiophantineSystem:
    """Validate a SystemFile document ``{"A": [[..]], "b": [..], "u": [..]?}``."""
    if not isinstance(doc, dict) or "A" not in doc or "b" not in doc:
        raise InputError('expected an object with keys "A" and "b"')
    A, b, u = doc["A"], doc["b"], doc.get("u")
    if not isinstance(A, list) or not A or not all(isinstance(r, list) for r in A):
        raise InputError('"A" must be a non-empty array of arrays')
    n = len(A[0])
    if n == 0 or any(len(r) != n for r in A):
        raise InputError('"A" must be rectangular with at least one column')
    A = [[_int(x, '"A"') for x in r] for r in A]
    if not isinstance(b, list) or len(b) != len(A):
        raise InputError(f'"b" must be an array of length {len(A)}')
    b = [_int(x, '"b"') for x in b]
    if u is not None:
        if not isinstance(u, list) or len(u) != n:
            raise InputError(f'"u" must be an array of length {n}')
        u = [_int(x, '"u"') for x in u]
        if any(x < 0 for x in u):
            raise InputError('"u" must be nonnegative')
    return DiophantineSystem(Matrix(A), tuple(b), None if u is None else tuple(u))


def load_system(path: str) -> DiophantineSystem:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    return parse_system(doc)


def rat(x) -> str:
    return str(Fraction(x))


def matrix_to_json(T: Matrix) -> list[list[str]]:
    return [[rat(x) for x in row] for row in T.rows]


def parse_T(text: str) -> Matrix:
    """Rows separated by ';', entries by ',' (each an int or "p/q")."""
    try:
        rows = [[Fraction(x.strip()) for x in row.split(",")]
                for row in text.strip().split(";") if row.strip()]
        return Matrix(rows)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad --force-T value: {exc}") from exc


def parse_window(text: str, n: int) -> tuple[int, ...]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(f"bad --window value: {text!r}") from exc
    if len(vals) == 1:
        vals *= n
    if len(vals) != n or any(v < 0 for v in vals):
        raise InputError(f"--window needs 1 or {n} nonnegative integers")
    return tuple(vals)


def aggregation_report(agg: AggregationMatrix) -> dict:
    p = agg.provenance
    return {
        "kind": agg.kind.value,
        "k": agg.k,
        "T": matrix_to_json(agg.T),
        "introduced_bounds": None if agg.introduced_bounds is None
        else [str(x) for x in agg.introduced_bounds],
        "provenance": {
            "method": p.method,
            "M": None if p.M is None else str(p.M),
            "C": None if p.C is None else str(p.C),
            "q": [str(q) for q in p.q],
            "h": [[str(x) for x in h] for h in p.h],
            "r": p.r,
        },
        "verdict": "ok",
    }


def cmd_aggregate(args) -> tuple[dict, int]:
    sys_ = load_system(args.file)
    if args.mode == "weak":
        agg = aggregate_weak(sys_)
    else:
        agg = aggregate_strong(sys_, explicit=args.explicit)
    return aggregation_report(agg), EXIT_OK


def cmd_count(args) -> tuple[dict, int]:
    sys_ = load_system(args.file)
    try:
        if sys_.bounded:
            agg = aggregate_strong(sys_)
        elif decompose_cone(sys_.A).is_pointed:
            agg = aggregate_pointed(sys_)
        else:
            agg = aggregate_weak(sys_)
    except InfeasibleByLattice:
        return {"count": 0, "method": args.method, "error_bound": None,
                "feasible": False}, EXIT_OK
    res = count_system(sys_, agg, method=args.method)
    if agg.kind is Kind.WEAK:
        count = None
    else:
        count = res.count
    return {"count": count, "method": res.method, "error_bound": res.spectral_error_bound,
            "feasible": res.feasible}, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    sys_ = load_system(args.file)
    agg = None
    if args.force_T:
        T = parse_T(args.force_T)
        if T.ncols != sys_.m:
            raise InputError(f"--force-T needs {sys_.m} columns")
    else:
        agg = aggregate_strong(sys_)
        T = agg.T
    if args.window:
        window = parse_window(args.window, sys_.n)
    elif sys_.bounded:
        window = sys_.u
    elif agg is not None and agg.provenance.method == "pointed":
        window = pointed_window(sys_, agg)
    else:
        window = single_row_window((T @ sys_.A).row(0), (T @ sys_.b)[0]) if T.nrows == 1 else None
        if window is None:
            raise InputError("no finite window covers this system; pass --window")
    cert = certify_strong(sys_, T, window)
    return {
        "equal": cert.equal,
        "counterexample": None if cert.counterexample is None else list(cert.counterexample),
        "window": list(cert.window),
        "k": T.nrows,
        "T": matrix_to_json(T),
    }, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dagg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("aggregate", help="build an aggregation matrix")
    a.add_argument("file")
    a.add_argument("--mode", choices=("strong", "weak"), default="strong")
    a.add_argument("--explicit", action="store_true",
                   help="bounded systems only: T = (1/q_1, ..., 1/q_{m-1}, -1)")
    a.set_defaults(func=cmd_aggregate)

    c = sub.add_parser("count", help="count solutions via a size-one aggregation")
    c.add_argument("file")
    c.add_argument("--method", choices=("dp", "spectral", "both"), default="both")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="aggregate, then certify by enumeration")
    v.add_argument("file")
    v.add_argument("--window", help="N or N1,N2,...")
    v.add_argument("--force-T", dest="force_T", help="rows ';'-separated, entries ','")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, code = args.func(args)
    except InputError as exc:
        report, code = {"verdict": "error", "error": str(exc)}, EXIT_PARSE
    except RankDeficient as exc:
        report, code = {"verdict": "error", "error": f"rank deficient: {exc}"}, EXIT_PARSE
    except InfeasibleByLattice as exc:
        report, code = {"verdict": "infeasible", "error": str(exc)}, EXIT_INFEASIBLE
    except (UnsupportedRegime, DegreeOverflow, PrecisionLoss) as exc:
        report, code = {"verdict": "unsupported", "error": str(exc)}, EXIT_UNSUPPORTED
    except WindowTooLarge as exc:
        report, code = {"verdict": "window-too-large", "error": str(exc)}, EXIT_WINDOW
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
