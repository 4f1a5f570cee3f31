"""Pade witness for the log system: identities and det R_(0) as N grows."""
from gop.exactcore import MatRF, PolyQ, RatFuncQ
from gop.pade import PadeProblem, build_witness, derivative_relation_check, solve_pade
from gop.powerseries import PowerSeriesQ
from gop.systems import SystemQ

z = PolyQ.z()
ONE = PolyQ.const(1)


def main():
    sys_ = SystemQ.from_matrix(MatRF([[0, 1], [0, RatFuncQ(ONE, ONE - z)]]))
    for N in range(2, 13, 2):
        M = N // 2
        f = [PowerSeriesQ.neg_log1m(N + M), PowerSeriesQ.geometric(N + M)]
        sol = solve_pade(PadeProblem(f, N, M))
        ok = all(derivative_relation_check(sys_, sol, m) for m in range(min(5, N + M - 1) + 1))
        w = build_witness(sys_, sol)
        print(f"N={N:2d} M={M:2d} house(Q)={sol.house}  identities={ok}  det R0 nonzero={w.nonsingular}")


if __name__ == "__main__":
    main()
