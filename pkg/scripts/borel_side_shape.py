"""Singularities of the Fourier-Laplace image of the Borel-side operator.

For each E-function the Borel transform is recovered as an exact rational
function, the minimal operator of u^-1 g(1/u) is guessed, mapped through F*
and classified.
"""
from gop.diffop import diffop_from_weyl, fourier_laplace
from gop.exactcore import PolyQ, RatFuncQ
from gop.pade import reconstruct_rational
from gop.powerseries import PowerSeriesQ
from gop.series import borel, guess_min_operator
from gop.singular import fuchs_summary

z = PolyQ.z()
ONE = PolyQ.const(1)

WITNESSES = {
    "exp": PowerSeriesQ.exp(24),
    "(1-z)e^z": PowerSeriesQ.poly_times_exp(ONE - z, 24),
    "(1+z^2)e^z": PowerSeriesQ.poly_times_exp(ONE + z**2, 30),
}


def main():
    for name, f in WITNESSES.items():
        g = reconstruct_rational(borel(f), 4)
        h = g.compose_inverse() * RatFuncQ(ONE, z)
        res = guess_min_operator(PowerSeriesQ.from_ratfunc(h, 30), 3, 4, 4)
        L = diffop_from_weyl(fourier_laplace(res.operator.to_weyl()))
        s = fuchs_summary(L)
        kinds = ", ".join(f"{r.point}: {r.kind}" for r in s.reports)
        print(f"{name:12s} borel = {g}")
        print(f"{'':12s} guessed {res.operator}  ->  F* {L}")
        print(f"{'':12s} {kinds}")


if __name__ == "__main__":
    main()
