"""Linear differential operators over Q(z) and the Weyl algebra Q[z, D].

A :class:`DiffOp` stores rational-function coefficients a_0..a_mu of
``sum a_k(z) D^k``.  A :class:`WeylPoly` stores normal-ordered terms
``c * z^i * D^j`` and is the domain of the Fourier-Laplace morphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm, perm
from typing import Iterable, Mapping, Sequence

from .exactcore import MatRF, PolyQ, Q, RatFuncQ, join_terms, poly_lcm
from .powerseries import PowerSeriesQ


class DiffOp:
    """sum_k coeffs[k](z) * D^k with a nonzero leading coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [RatFuncQ.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        if not cs:
            raise ValueError("the zero operator is not a DiffOp")
        self.coeffs: tuple[RatFuncQ, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> RatFuncQ:
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "DiffOp([" + ", ".join(str(c) for c in self.coeffs) + "])"

    def __str__(self):
        if self.is_polynomial():
            return str(self.to_weyl())
        return repr(self)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.coeffs)

    def monic(self) -> "DiffOp":
        inv = self.leading.inverse()
        return DiffOp([c * inv for c in self.coeffs])

    def left_mul(self, r) -> "DiffOp":
        """Left multiplication by a rational function."""
        r = RatFuncQ.coerce(r)
        return DiffOp([r * c for c in self.coeffs])

    def clear_denominators(self) -> "DiffOp":
        """Polynomial-coefficient left multiple with content 1 and positive leading term."""
        d = reduce(poly_lcm, (c.den for c in self.coeffs), PolyQ.const(1))
        polys = [(c * d).as_poly() for c in self.coeffs]
        cont = reduce(_frac_gcd, (p.content() for p in polys if p))
        lead = polys[-1].lead
        scale = (1 / cont) if lead > 0 else (-1 / cont)
        return DiffOp([p * scale for p in polys])

    def translate(self, alpha) -> "DiffOp":
        """Operator in u = z - alpha (D is unchanged by a translation)."""
        return DiffOp([c.shift(alpha) for c in self.coeffs])

    def to_weyl(self) -> "WeylPoly":
        terms = {}
        for j, c in enumerate(self.coeffs):
            for i, x in enumerate(c.as_poly().coeffs):
                if x:
                    terms[(i, j)] = x
        return WeylPoly(terms)

    def apply(self, f: PowerSeriesQ) -> PowerSeriesQ:
        return apply(self, f)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))


@dataclass(frozen=True)
class ZeroNormalForm:
    """L(y) = z^n y^(n) - sum_{k<n} z^k B_k(z) y^(k), up to a rational left factor."""

    n: int
    B: tuple

    def to_diffop(self) -> DiffOp:
        z = PolyQ.z()
        coeffs = [-(RatFuncQ.coerce(z**k) * b) for k, b in enumerate(self.B)]
        return DiffOp(coeffs + [RatFuncQ.coerce(z**self.n)])


def companion(L: DiffOp) -> MatRF:
    """Companion matrix acting on (y, y', ..., y^(mu-1))."""
    mu = L.order
    if mu < 1:
        raise ValueError("companion matrix needs an operator of order >= 1")
    inv = L.leading.inverse()
    rows = [[1 if j == i + 1 else 0 for j in range(mu)] for i in range(mu - 1)]
    rows.append([-(L.coeffs[j] * inv) for j in range(mu)])
    return MatRF(rows)


def to_zero_normal_form(L: DiffOp) -> ZeroNormalForm:
    n = L.order
    if n < 1:
        raise ValueError("normal form needs an operator of order >= 1")
    inv = L.leading.inverse()
    z = PolyQ.z()
    B = tuple(-(RatFuncQ.coerce(z ** (n - k)) * L.coeffs[k] * inv) for k in range(n))
    return ZeroNormalForm(n, B)


def apply(L: DiffOp, f: PowerSeriesQ) -> PowerSeriesQ:
    """Truncated series of L(f); the result has len(f) - order coefficients."""
    out_len = len(f) - L.order
    if out_len < 1:
        raise ValueError(f"series of length {len(f)} too short for an operator of order {L.order}")
    acc = [Fraction(0)] * out_len
    deriv = f
    for k, a in enumerate(L.coeffs):
        if k:
            deriv = deriv.derivative()
        if a.is_zero():
            continue
        if a.is_polynomial():
            term = deriv.mul_poly(a.num, out_len)
        else:
            term = PowerSeriesQ(a.series(out_len)) * deriv
        for i in range(out_len):
            acc[i] += term.coeffs[i]
    return PowerSeriesQ(acc)


class WeylPoly:
    """Normal-ordered element sum c_{ij} z^i D^j of the Weyl algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        items = {}
        for (i, j), c in (terms or {}).items():
            c = Q(c)
            if c:
                items[(int(i), int(j))] = c
        self.terms: dict[tuple[int, int], Fraction] = dict(sorted(items.items()))

    @classmethod
    def const(cls, c) -> "WeylPoly":
        return cls({(0, 0): c})

    @classmethod
    def z(cls) -> "WeylPoly":
        return cls({(1, 0): 1})

    @classmethod
    def D(cls) -> "WeylPoly":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, WeylPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"WeylPoly({self})"

    def __str__(self):
        return format_weyl(self)

    def __add__(self, other: "WeylPoly") -> "WeylPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WeylPoly(out)

    def __neg__(self):
        return WeylPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "WeylPoly":
        c = Q(c)
        return WeylPoly({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "WeylPoly") -> "WeylPoly":
        return weyl_mul(self, other)

    def __pow__(self, k: int) -> "WeylPoly":
        out = WeylPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def substitute_signs(self) -> "WeylPoly":
        """Image under z -> -z, D -> -D."""
        return WeylPoly({(i, j): c * (-1) ** (i + j) for (i, j), c in self.terms.items()})


def _dpow_times_zpow(b: int, c: int) -> dict[tuple[int, int], int]:
    # D^b z^c = sum_k C(b,k) c!/(c-k)! z^(c-k) D^(b-k)
    return {(c - k, b - k): comb(b, k) * perm(c, k) for k in range(min(b, c) + 1)}


def weyl_mul(a: WeylPoly, b: WeylPoly) -> WeylPoly:
    out: dict[tuple[int, int], Fraction] = {}
    for (i1, j1), c1 in a.terms.items():
        for (i2, j2), c2 in b.terms.items():
            for (zi, dj), m in _dpow_times_zpow(j1, i2).items():
                key = (i1 + zi, dj + j2)
                out[key] = out.get(key, 0) + c1 * c2 * m
    return WeylPoly(out)


def fourier_laplace(a: WeylPoly) -> WeylPoly:
    """Algebra morphism z -> D, D -> -z, in normal order."""
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in a.terms.items():
        # z^i D^j -> D^i (-z)^j
        sign = -1 if j % 2 else 1
        for key, m in _dpow_times_zpow(i, j).items():
            out[key] = out.get(key, 0) + sign * c * m
    return WeylPoly(out)


def diffop_from_weyl(a: WeylPoly) -> DiffOp:
    if a.is_zero():
        raise ValueError("the zero Weyl element is not a differential operator")
    mu = max(j for _, j in a.terms)
    polys: list[dict[int, Fraction]] = [dict() for _ in range(mu + 1)]
    for (i, j), c in a.terms.items():
        polys[j][i] = c
    coeffs = [PolyQ([p.get(k, 0) for k in range(max(p, default=-1) + 1)]) for p in polys]
    return DiffOp(coeffs)


def weyl_from_diffop(L: DiffOp) -> WeylPoly:
    return L.to_weyl()


def format_weyl(a: WeylPoly) -> str:
    """Terms ordered by D-power then z-power, both descending: '-1*z*D + z'."""
    if a.is_zero():
        return "0"
    parts = []
    for (i, j), c in sorted(a.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
        factors = []
        if i:
            factors.append("z" if i == 1 else f"z^{i}")
        if j:
            factors.append("D" if j == 1 else f"D^{j}")
        parts.append((c, "*".join(factors)))
    return join_terms(parts)


def invert_operator(L: DiffOp) -> DiffOp:
    """Operator in u = 1/z obtained by substituting d/dz = -u^2 d/du.

    Route independent of the first-order-system construction; used as a
    cross-check of the gauge route at infinity.
    """
    u = PolyQ.z()
    neg_u2D = WeylPoly({(2, 1): -1})
    acc = [RatFuncQ.coerce(0)] * (L.order + 1)
    power = WeylPoly.const(1)
    for k, a in enumerate(L.coeffs):
        if k:
            power = neg_u2D * power
        ak = a.compose_inverse()
        for (i, j), c in power.terms.items():
            acc[j] = acc[j] + ak * RatFuncQ.coerce(u**i * c)
    return DiffOp(acc)
