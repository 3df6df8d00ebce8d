"""Walk the 2x2 example end to end: fixtures, pipeline T, counts."""

from dagg import DiophantineSystem, Matrix, aggregate_strong, certify_strong
from dagg.counting import count_system
from dagg.oracle import enumerate_solutions, pointed_window


def main():
    sys = DiophantineSystem(Matrix([[1, 2], [2, 1]]), (3, 3))
    print("solutions of A x = b in [0,3]^2:", sorted(enumerate_solutions(sys.A, sys.b, (3, 3)).solutions))
    for T in (Matrix([[1, 2]]), Matrix([[1, 1]])):
        coeffs, rhs = T @ sys.A, T @ sys.b
        sols = sorted(enumerate_solutions(coeffs, rhs, (3, 3)).solutions)
        cert = certify_strong(sys, T, (3, 3))
        print(f"T={T.row(0)}: {coeffs.row(0)} . x = {rhs[0]} -> {sols}, strong={cert.equal}")

    agg = aggregate_strong(sys)
    window = pointed_window(sys, agg)
    print("pipeline T:", [str(x) for x in agg.T.row(0)], "method:", agg.provenance.method)
    print("certified on window", window, "->", certify_strong(sys, agg, window).equal)
    res = count_system(sys, agg)
    print("count:", res.count, "via", res.method)


if __name__ == "__main__":
    main()
