"""Size profiles of series, the Borel coefficient map, division by a vanishing
linear factor, and guessing of annihilating operators."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm, perm

from .diffop import DiffOp
from .exactcore import PolyQ, Q
from .linalg import integer_vector, nullspace
from .powerseries import PowerSeriesQ

__all__ = [
    "ArithmeticProfile",
    "DivisionResult",
    "GuessResult",
    "PowerSeriesQ",
    "borel",
    "divide_out_zero",
    "guess_min_operator",
    "laplace_inverse_of_borel",
    "profile",
    "scale_variable",
]


@dataclass(frozen=True)
class ArithmeticProfile:
    """House and denominator growth of a_n; mode E uses a_n = n! c_n, mode G a_n = c_n."""

    mode: str
    houses: tuple
    dens: tuple
    eps_house: tuple  # n >= 2; None where a_n = 0
    eps_den: tuple
    geo_house: tuple
    geo_den: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "house", "den", "eps_house", "eps_den"])
        for n, (h, d) in enumerate(zip(self.houses, self.dens)):
            eh = self.eps_house[n - 2] if n >= 2 else None
            ed = self.eps_den[n - 2] if n >= 2 else None
            w.writerow([n, h, d, "" if eh is None else "%.12g" % eh, "" if ed is None else "%.12g" % ed])
        return buf.getvalue()


def _normalized(f: PowerSeriesQ, mode: str) -> list[Fraction]:
    if mode == "E":
        return [c * factorial(n) for n, c in enumerate(f.coeffs)]
    if mode == "G":
        return list(f.coeffs)
    raise ValueError("mode must be 'E' or 'G'")


def profile(f: PowerSeriesQ, mode: str = "G") -> ArithmeticProfile:
    if f.K < 4:
        raise ValueError("profile needs at least 5 coefficients")
    a = _normalized(f, mode)
    houses = tuple(abs(x) for x in a)
    dens, d = [], 1
    for x in a:
        d = lcm(d, x.denominator)
        dens.append(d)
    eps_h, eps_d = [], []
    for n in range(2, len(a)):
        lf = math.lgamma(n + 1)
        eps_h.append(math.log(houses[n]) / lf if houses[n] else None)
        eps_d.append(math.log(dens[n]) / lf)
    geo_h = tuple(float(h) ** (1 / (n + 1)) if h else 0.0 for n, h in enumerate(houses))
    geo_d = tuple(math.exp(math.log(d) / (n + 1)) for n, d in enumerate(dens))
    return ArithmeticProfile(mode, houses, tuple(dens), tuple(eps_h), tuple(eps_d), geo_h, geo_d)


def borel(f: PowerSeriesQ) -> PowerSeriesQ:
    """c_n -> n! c_n."""
    return PowerSeriesQ([c * factorial(n) for n, c in enumerate(f.coeffs)], f.polynomial)


def laplace_inverse_of_borel(g: PowerSeriesQ) -> PowerSeriesQ:
    """c_n -> c_n / n!."""
    return PowerSeriesQ([c / factorial(n) for n, c in enumerate(g.coeffs)], g.polynomial)


def scale_variable(f: PowerSeriesQ, xi) -> PowerSeriesQ:
    """f(xi z)."""
    xi = Q(xi)
    if xi == 0:
        raise ValueError("scaling by 0 is not allowed")
    return PowerSeriesQ([c * xi**n for n, c in enumerate(f.coeffs)], f.polynomial)


@dataclass(frozen=True)
class DivisionResult:
    series: PowerSeriesQ
    xi: Fraction
    mode: str  # "checked" or "assert-zero"
    residual: Fraction | None  # |truncated f(xi)| in checked mode


DEFAULT_TOL = Fraction(1, 10**6)


def divide_out_zero(f: PowerSeriesQ, xi, K_out: int | None = None, mode: str = "checked",
                    tol=DEFAULT_TOL) -> DivisionResult:
    """g with f = (z - xi) g up to truncation.

    In checked mode the truncated value f(xi) must vanish (exactly for
    polynomial series, within ``tol`` otherwise).  In assert-zero mode the
    caller vouches for f(xi) = 0 and nothing is evaluated.
    """
    xi = Q(xi)
    if mode not in ("checked", "assert-zero"):
        raise ValueError("mode must be 'checked' or 'assert-zero'")
    residual = None
    if xi == 0:
        if f.coeffs[0] != 0:
            raise ValueError("f does not vanish at 0")
        g = list(f.coeffs[1:])
    else:
        if mode == "checked":
            residual = abs(f.partial_sum(xi))
            bound = 0 if f.polynomial else Q(tol)
            if residual > bound:
                raise ValueError(f"f does not vanish at {xi}: |f({xi})| = {float(residual):.3g}")
        g, prev = [], Fraction(0)
        for c in f.coeffs:
            prev = (prev - c) / xi
            g.append(prev)
    if K_out is not None:
        if K_out > len(g):
            raise ValueError(f"only {len(g)} coefficients available")
        g = g[:K_out]
    out = PowerSeriesQ(g, f.polynomial)
    return DivisionResult(out, xi, mode, residual)


@dataclass(frozen=True)
class GuessResult:
    operator: DiffOp
    order: int
    degree: int
    verified_to: int
    exhausted_orders: tuple = ()


def _guess_rows(f: PowerSeriesQ, r: int, d: int):
    """Coefficient equations of sum_{k<=r, j<=d} p_{kj} z^j f^(k); unknowns ordered by (j, k)."""
    cols = [(j, k) for j in range(d + 1) for k in range(r + 1)]
    c = f.coeffs
    rows = []
    for m in range(len(c) - r):
        row = []
        for j, k in cols:
            i = m - j
            row.append(c[i + k] * perm(i + k, k) if i >= 0 else Fraction(0))
        rows.append(row)
    return cols, rows


def guess_min_operator(f: PowerSeriesQ, max_order: int, max_degree: int,
                       verify_terms: int = 4) -> GuessResult | None:
    """Least-order operator with coefficients of degree <= max_degree annihilating f.

    Each order is solved on all but the last ``verify_terms`` equations and
    the first nullspace vector (lowest degree) is checked on the held-out ones.
    """
    K = len(f) - 1
    need = (max_order + 1) * (max_degree + 1) + verify_terms + max_order
    if K < need:
        raise ValueError(f"need at least {need + 1} coefficients, got {K + 1}")
    exhausted = []
    for r in range(max_order + 1):
        cols, rows = _guess_rows(f, r, max_degree)
        fit, check = rows[: len(rows) - verify_terms], rows[len(rows) - verify_terms:]
        basis = nullspace(fit, len(cols))
        if not basis:
            exhausted.append(r)
            continue
        v = basis[0]
        if any(sum(a * b for a, b in zip(row, v)) for row in check):
            exhausted.append(r)
            continue
        polys = [[Fraction(0)] * (max_degree + 1) for _ in range(r + 1)]
        for (j, k), x in zip(cols, v):
            polys[k][j] = x
        top = next(k for k in range(r, -1, -1) if any(polys[k]))
        ints = integer_vector([x for p in polys for x in p])
        # positive leading coefficient of the highest-order polynomial
        lead = PolyQ(ints[top * (max_degree + 1):(top + 1) * (max_degree + 1)]).lead
        sign = 1 if lead > 0 else -1
        ps = [PolyQ([sign * ints[k * (max_degree + 1) + j] for j in range(max_degree + 1)]) for k in range(top + 1)]
        L = DiffOp(ps)
        return GuessResult(L, L.order, max(p.degree for p in ps), len(rows), tuple(exhausted))
    return None
