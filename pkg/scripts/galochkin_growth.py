"""Denominator growth of the iterated matrices for a few reference systems.

Writes one CSV per system into the output directory and prints the growth flag.
"""
import argparse
from pathlib import Path

from gop.exactcore import MatRF, PolyQ, RatFuncQ
from gop.systems import SystemQ, classify_growth, galochkin_qs, iterate

z = PolyQ.z()
ONE = PolyQ.const(1)

SYSTEMS = {
    "log": MatRF([[0, 1], [0, RatFuncQ(ONE, ONE - z)]]),
    "exp": MatRF([[1]]),
    "sqrt": MatRF([[RatFuncQ(PolyQ.const(2), ONE - 4 * z)]]),
    "bessel0": MatRF([[0, 1], [-1, RatFuncQ(-ONE, z)]]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--S", type=int, default=24)
    ap.add_argument("--out", default="growth_csv")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)
    for name, G in SYSTEMS.items():
        rep = galochkin_qs(iterate(SystemQ.from_matrix(G), args.S))
        (out / f"{name}.csv").write_text(rep.to_csv())
        g = classify_growth(rep)
        print(f"{name:8s} q_S={rep.qs[-1]}  geom_sup={g.geom_sup:.3f}  ratio={g.envelope_ratio:.3f}  {g.flag}")


if __name__ == "__main__":
    main()
