"""gop command line.

Exit codes: 0 success, 1 domain error, 2 parse or usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .diffop import fourier_laplace
from .exactcore import MatRF
from .pade import PadeProblem, build_witness, preset_parameters, solve_pade
from .parsing import ParseError, parse_diffop, parse_ratfunc, parse_rational, parse_weyl
from .powerseries import PowerSeriesQ
from .series import divide_out_zero, guess_min_operator, profile
from .singular import fuchs_summary
from .systems import SystemQ, classify_growth, galochkin_qs, iterate

COMMANDS = ("galochkin", "fuchs", "flaplace", "pade", "profile", "guess", "divide")


class DomainError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    expression: str | None = None
    system: str | None = None
    series: list = field(default_factory=list)
    S: int = 10
    N: int = 4
    M: int = 2
    terms: int = 20
    max_order: int = 2
    max_degree: int = 2
    verify_terms: int = 4
    verify_order: int | None = None
    xi: str = "1"
    k_out: int | None = None
    division_mode: str = "checked"
    tol: str = "1/1000000"
    mode: str = "G"
    h_max: int = 0
    preset: int | None = None
    format: str = "json"
    output: str | None = None


def max_terms() -> int:
    return int(os.environ.get("GOP_MAX_TERMS", "512"))


def _check_terms(n: int) -> int:
    cap = max_terms()
    if n > cap:
        raise DomainError(f"{n} terms requested, GOP_MAX_TERMS is {cap}")
    if n < 1:
        raise DomainError("at least one term is required")
    return n


def load_system(path: str) -> SystemQ:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    n, rows = data.get("n"), data.get("matrix")
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise DomainError("system JSON needs 'n' and an n x n 'matrix'")
    return SystemQ.from_matrix(MatRF([[parse_ratfunc(str(x)) for x in r] for r in rows]))


def make_series(desc: str, n: int) -> PowerSeriesQ:
    """Built-in families: exp, log (-log(1-z)), geometric, rational:<expr>,
    expmul:<poly>, hyp2f1:a,b,c, file:<path to a JSON list of rationals>."""
    _check_terms(n)
    name, _, arg = desc.partition(":")
    if name == "exp":
        return PowerSeriesQ.exp(n)
    if name == "log":
        return PowerSeriesQ.neg_log1m(n)
    if name == "geometric":
        return PowerSeriesQ.geometric(n)
    if name == "rational":
        return PowerSeriesQ.from_ratfunc(parse_ratfunc(arg), n)
    if name == "expmul":
        p = parse_ratfunc(arg)
        if not p.is_polynomial():
            raise DomainError("expmul needs a polynomial")
        return PowerSeriesQ.poly_times_exp(p.as_poly(), n)
    if name == "hyp2f1":
        params = [parse_rational(x) for x in arg.split(",")]
        if len(params) != 3:
            raise DomainError("hyp2f1 needs three parameters a,b,c")
        return PowerSeriesQ.hyp2f1(*params, n)
    if name == "file":
        with open(arg, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise DomainError("series JSON must be a list of rational strings")
        return PowerSeriesQ([parse_rational(str(x)) for x in data[:n]])
    raise DomainError(f"unknown series family {name!r}")


def _galochkin(cfg: RunConfig) -> str:
    if cfg.S < 1:
        raise DomainError("S must be >= 1")
    rep = galochkin_qs(iterate(load_system(cfg.system), cfg.S))
    if cfg.format == "csv":
        return rep.to_csv()
    out = rep.to_dict()
    if cfg.S >= 8:
        out["growth"] = classify_growth(rep).to_dict()
    return json.dumps(out, indent=2) + "\n"


def _fuchs(cfg: RunConfig) -> str:
    return fuchs_summary(parse_diffop(cfg.expression), cfg.verify_order).to_json() + "\n"


def _flaplace(cfg: RunConfig) -> str:
    return str(fourier_laplace(parse_weyl(cfg.expression))) + "\n"


def _pade(cfg: RunConfig) -> str:
    sys_ = load_system(cfg.system) if cfg.system else None
    N, M = cfg.N, cfg.M
    if cfg.preset is not None:
        if sys_ is None:
            raise DomainError("--preset needs --system")
        N, M = preset_parameters(sys_.n, sys_.t, cfg.preset)
    if N < 0 or M < 1:
        raise DomainError("need N >= 0 and M >= 1")
    fs = [make_series(s, max(cfg.terms, N + M)) for s in cfg.series]
    if not fs:
        raise DomainError("at least one --series is required")
    sol = solve_pade(PadeProblem(fs, N, M))
    out = {"N": N, "M": M, **sol.to_dict()}
    if sys_ is not None:
        w = build_witness(sys_, sol, cfg.h_max)
        out["detR0"] = str(w.detR0)
        out["detR0_nonzero"] = w.nonsingular
    return json.dumps(out, indent=2) + "\n"


def _profile(cfg: RunConfig) -> str:
    prof = profile(make_series(cfg.series[0], cfg.terms), cfg.mode)
    if cfg.format == "csv":
        return prof.to_csv()
    return json.dumps({
        "mode": prof.mode,
        "houses": [str(h) for h in prof.houses],
        "dens": [str(d) for d in prof.dens],
        "eps_house": prof.eps_house,
        "eps_den": prof.eps_den,
    }, indent=2) + "\n"


def _guess(cfg: RunConfig) -> str:
    res = guess_min_operator(make_series(cfg.series[0], cfg.terms), cfg.max_order, cfg.max_degree, cfg.verify_terms)
    if res is None:
        return json.dumps({"operator": None}) + "\n"
    return json.dumps({
        "operator": str(res.operator),
        "order": res.order,
        "degree": res.degree,
        "verified_to": res.verified_to,
        "exhausted_orders": list(res.exhausted_orders),
    }, indent=2) + "\n"


def _divide(cfg: RunConfig) -> str:
    res = divide_out_zero(make_series(cfg.series[0], cfg.terms), parse_rational(cfg.xi), cfg.k_out,
                          cfg.division_mode, parse_rational(cfg.tol))
    return json.dumps({
        "xi": str(res.xi),
        "mode": res.mode,
        "residual": None if res.residual is None else str(res.residual),
        "coeffs": [str(c) for c in res.series.coeffs],
    }, indent=2) + "\n"


_DISPATCH = {
    "galochkin": _galochkin,
    "fuchs": _fuchs,
    "flaplace": _flaplace,
    "pade": _pade,
    "profile": _profile,
    "guess": _guess,
    "divide": _divide,
}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if cfg.command in ("profile", "guess", "divide") and not cfg.series:
            raise DomainError("--series is required")
        text = _DISPATCH[cfg.command](cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return 2
    except (DomainError, ValueError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json",)):
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--output", "-o")

    sp = sub.add_parser("galochkin", help="denominator sequence of a system")
    sp.add_argument("--system", required=True)
    sp.add_argument("--S", type=int, default=10)
    common(sp, ("json", "csv"))

    sp = sub.add_parser("fuchs", help="classify every singular point of an operator")
    sp.add_argument("expression")
    sp.add_argument("--verify-order", type=int)
    common(sp)

    sp = sub.add_parser("flaplace", help="Fourier-Laplace image of an operator")
    sp.add_argument("expression")
    common(sp)

    sp = sub.add_parser("pade", help="simultaneous Pade approximants")
    sp.add_argument("--series", action="append", default=[])
    sp.add_argument("--system")
    sp.add_argument("--N", type=int, default=4)
    sp.add_argument("--M", type=int, default=2)
    sp.add_argument("--terms", type=int, default=0)
    sp.add_argument("--h-max", type=int, default=0)
    sp.add_argument("--preset", type=int, help="use N = 2n(t+1)(s+n-1), M = N/(2n) for this s")
    common(sp)

    sp = sub.add_parser("profile", help="house and denominator growth")
    sp.add_argument("--series", action="append", default=[])
    sp.add_argument("--terms", type=int, default=20)
    sp.add_argument("--mode", choices=("E", "G"), default="G")
    common(sp, ("csv", "json"))

    sp = sub.add_parser("guess", help="minimal annihilating operator within bounds")
    sp.add_argument("--series", action="append", default=[])
    sp.add_argument("--terms", type=int, default=20)
    sp.add_argument("--max-order", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=2)
    sp.add_argument("--verify-terms", type=int, default=4)
    common(sp)

    sp = sub.add_parser("divide", help="divide a series by (z - xi)")
    sp.add_argument("--series", action="append", default=[])
    sp.add_argument("--terms", type=int, default=20)
    sp.add_argument("--xi", default="1")
    sp.add_argument("--k-out", type=int)
    sp.add_argument("--mode", dest="division_mode", choices=("checked", "assert-zero"), default="checked")
    sp.add_argument("--tol", default="1/1000000", help="bound on |f(xi)| in checked mode")
    common(sp)
    return p


def main(argv=None) -> int:
    return run(RunConfig(**vars(build_parser().parse_args(argv))))


if __name__ == "__main__":
    sys.exit(main())
