"""First-order systems y' = G y, their iterated matrices and denominator sequences.

The iterated matrices satisfy y^(s) = G_s y for every solution y, with
G_1 = G and G_{s+1} = G_s G + G_s'.  For a common denominator T of G the
matrices T^s G_s are polynomial; q_s is the least common denominator of the
coefficients of T^m G_m / m! for m <= s.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, lcm

from .exactcore import (
    MatRF,
    PolyQ,
    RatFuncQ,
    common_denominator_matrix,
    den_of_rationals,
    poly_matrix_coefficients,
)
from .powerseries import PowerSeriesQ


@dataclass(frozen=True)
class SystemQ:
    """y' = G y with a monic polynomial T such that T*G is polynomial."""

    G: MatRF
    T: PolyQ
    clearing: int
    t: int

    @classmethod
    def from_matrix(cls, G: MatRF, T: PolyQ | None = None) -> "SystemQ":
        if not isinstance(G, MatRF):
            G = MatRF(G)
        T = common_denominator_matrix(G) if T is None else PolyQ(T.coeffs).monic()
        TG = G.map(lambda x: x * T)
        if not TG.is_polynomial():
            raise ValueError("T*G must have polynomial entries")
        clearing = den_of_rationals(list(T.coeffs) + poly_matrix_coefficients(TG))
        t = max(T.degree, max(x.as_poly().degree for x in TG.entries()))
        return cls(G, T, clearing, max(t, 0))

    @property
    def n(self) -> int:
        return self.G.n


@dataclass
class IteratedMatrices:
    base: SystemQ
    cache: list = field(default_factory=list)

    @property
    def S(self) -> int:
        return len(self.cache)

    def __getitem__(self, s: int) -> MatRF:
        """G_s for 1 <= s <= S."""
        if s < 1:
            raise IndexError("iterated matrices start at s = 1")
        return self.cache[s - 1]

    def extend(self, S: int) -> "IteratedMatrices":
        G, T = self.base.G, self.base.T
        if not self.cache:
            self.cache.append(G)
        while len(self.cache) < S:
            cur = self.cache[-1]
            nxt = (cur @ G) + cur.derivative()
            s = len(self.cache) + 1
            Ts = T**s
            if not all((x * Ts).is_polynomial() for x in nxt.entries()):
                raise AssertionError(f"T^{s} G_{s} is not polynomial; arithmetic bug")
            self.cache.append(nxt)
        return self


def iterate(sys: SystemQ, S: int) -> IteratedMatrices:
    if S < 1:
        raise ValueError("S must be >= 1")
    return IteratedMatrices(sys).extend(S)


@dataclass(frozen=True)
class GalochkinReport:
    S: int
    qs: tuple
    eps_estimates: tuple  # log q_s / log s!, s >= 2
    geom_estimates: tuple  # q_s^(1/(s+1))
    clearing: int = 1
    T: PolyQ | None = None

    def rows(self):
        for s, q in enumerate(self.qs, 1):
            eps = self.eps_estimates[s - 2] if s >= 2 else None
            yield s, q, eps, self.geom_estimates[s - 1]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "q_s", "eps_estimate", "geom_estimate"])
        for s, q, eps, geo in self.rows():
            w.writerow([s, q, "" if eps is None else "%.12g" % eps, "%.12g" % geo])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "S": self.S,
            "T": str(self.T) if self.T is not None else None,
            "clearing": str(self.clearing),
            "qs": [str(q) for q in self.qs],
            "eps_estimates": [float("%.12g" % e) for e in self.eps_estimates],
            "geom_estimates": [float("%.12g" % g) for g in self.geom_estimates],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _log_factorial(s: int) -> float:
    return math.lgamma(s + 1)


def galochkin_qs(it: IteratedMatrices, T: PolyQ | None = None) -> GalochkinReport:
    """Denominator sequence q_1..q_S of T^m G_m / m!.

    ``T`` overrides the system's denominator (it must still clear G).
    """
    if not it.cache:
        raise ValueError("no iterated matrices cached")
    T = it.base.T if T is None else T
    qs, q = [], 1
    Tm = PolyQ.const(1)
    for m, Gm in enumerate(it.cache, 1):
        Tm = Tm * T
        inv = Fraction(1, factorial(m))
        coeffs = []
        for x in Gm.entries():
            y = x * Tm
            if not y.is_polynomial():
                raise ValueError(f"T^{m} G_{m} is not polynomial for the given T")
            coeffs.extend(c * inv for c in y.as_poly().coeffs)
        q = lcm(q, den_of_rationals(coeffs))
        qs.append(q)
    eps = tuple(math.log(q) / _log_factorial(s) for s, q in enumerate(qs, 1) if s >= 2)
    geo = tuple(math.exp(math.log(q) / (s + 1)) for s, q in enumerate(qs, 1))
    return GalochkinReport(len(qs), tuple(qs), eps, geo, it.base.clearing, T)


@dataclass(frozen=True)
class GrowthSummary:
    geom_sup: float
    eps_last: float
    eps_decay: float  # relative drop of eps over the second half
    envelope_ratio: float  # observed / factorial-predicted growth of the geometric rate
    flag: str

    def to_dict(self) -> dict:
        return {
            "geom_sup": self.geom_sup,
            "eps_last": self.eps_last,
            "eps_decay": self.eps_decay,
            "envelope_ratio": self.envelope_ratio,
            "flag": self.flag,
            "note": "empirical heuristic, not a proof",
        }


STRICT_RATIO = 0.7
FACTORIAL_RATIO = 0.9
FLAT_EPS = 0.02


def classify_growth(rep: GalochkinReport) -> GrowthSummary:
    """Empirical strict/large/neither flag for a denominator sequence.

    Uses r_s = log q_s / (s+1) and its running maximum R_s (log of the least
    C with q_k <= C^(k+1) for k <= s).  Over the second half h..S, a sequence
    q_s ~ (s!)^e raises R by about e*(log S!/(S+1) - log h!/(h+1)); a
    geometric one leaves R almost flat.  The flag compares the observed rise
    with that prediction (e taken as the last eps estimate) and looks at
    whether eps decays.
    """
    S = rep.S
    if S < 8:
        raise ValueError("classify_growth needs S >= 8")
    geom_sup = max(rep.geom_estimates)
    eps_last = rep.eps_estimates[-1]
    if all(q == 1 for q in rep.qs):
        return GrowthSummary(1.0, 0.0, 0.0, 0.0, "consistent-with-strict")
    h = S // 2
    r = [math.log(q) / (s + 1) for s, q in enumerate(rep.qs, 1)]
    env = [max(r[: k + 1]) for k in range(S)]
    eps_h = rep.eps_estimates[h - 2]
    decay = (eps_h - eps_last) / eps_last if eps_last else 0.0
    predicted = eps_last * (_log_factorial(S) / (S + 1) - _log_factorial(h) / (h + 1))
    observed = env[-1] - env[h - 1]
    ratio = observed / predicted if predicted > 0 else 0.0
    if decay <= FLAT_EPS and ratio >= FACTORIAL_RATIO:
        flag = "inconsistent"
    elif ratio < STRICT_RATIO:
        flag = "consistent-with-strict"
    else:
        flag = "consistent-with-large"
    return GrowthSummary(geom_sup, eps_last, decay, ratio, flag)


def gauge_transform(P: MatRF, A: MatRF) -> MatRF:
    """P[A] = P A P^-1 + P' P^-1."""
    try:
        Pinv = P.inverse()
    except ZeroDivisionError:
        raise ValueError("gauge matrix is singular") from None
    return (P @ A @ Pinv) + (P.derivative() @ Pinv)


def translate(sys: SystemQ, alpha) -> SystemQ:
    """System in u = z - alpha."""
    return SystemQ.from_matrix(sys.G.shift(alpha))


def invert_variable(sys: SystemQ) -> SystemQ:
    """System in u = 1/z: G~(u) = -u^-2 G(1/u), with T~ = u^(t+2) T(1/u) made monic."""
    u2 = RatFuncQ(PolyQ.const(-1), PolyQ.monomial(2))
    Gt = sys.G.compose_inverse().map(lambda x: x * u2)
    Tt = sys.T.reverse(sys.t + 2)
    return SystemQ.from_matrix(Gt, Tt)


@dataclass(frozen=True)
class CCoeffTable:
    s_max: int
    c: tuple  # c[s][k], index 0 unused

    def __call__(self, s: int, k: int) -> int:
        return self.c[s][k]


def c_closed_form(s: int, l: int) -> int:
    return comb(s - 1, s - l) * factorial(s) // factorial(l)


def c_recurrence(s_max: int) -> list[list[int]]:
    c = [[0] * (s_max + 2) for _ in range(s_max + 2)]
    c[1][1] = 1
    for s in range(1, s_max):
        c[s + 1][1] = (s + 1) * c[s][1]
        for k in range(2, s + 1):
            c[s + 1][k] = c[s][k - 1] + (s + k) * c[s][k]
        c[s + 1][s + 1] = c[s][s]
    return c


def c_coeffs(s_max: int) -> CCoeffTable:
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    table = [[0] * (s_max + 1)]
    for s in range(1, s_max + 1):
        table.append([0] + [c_closed_form(s, l) for l in range(1, s + 1)] + [0] * (s_max - s))
    rec = c_recurrence(s_max)
    for s in range(1, s_max + 1):
        for k in range(1, s + 1):
            if rec[s][k] != table[s][k]:
                raise AssertionError(f"c[{s}][{k}]: closed form {table[s][k]} != recurrence {rec[s][k]}")
    return CCoeffTable(s_max, tuple(tuple(r) for r in table))


def inverted_iterate_formula(it: IteratedMatrices, s: int, table: CCoeffTable | None = None) -> MatRF:
    """(-1)^s sum_k c_{s,k} u^-(s+k) G_k(1/u), from the original iterates."""
    table = table or c_coeffs(s)
    acc = MatRF.zero(it.base.n)
    for k in range(1, s + 1):
        w = RatFuncQ(PolyQ.const((-1) ** s * table(s, k)), PolyQ.monomial(s + k))
        acc = acc + it[k].compose_inverse().map(lambda x: x * w)
    return acc


def fundamental_series(sys: SystemQ, K: int, alpha=0) -> list[list[PowerSeriesQ]]:
    """Y(z) = sum_{n<K} G_n(alpha)/n! (z-alpha)^n with G_0 = I, as series in z - alpha.

    Y solves Y' = G Y with Y(alpha) = I; alpha must not be a pole of G.
    """
    if sys.T(alpha) == 0:
        raise ValueError("alpha is a pole of G")
    n = sys.n
    it = iterate(sys, max(K - 1, 1))
    vals = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    cols = [[[v] for v in row] for row in vals]
    for m in range(1, K):
        Gm = it[m]
        inv = Fraction(1, factorial(m))
        for i in range(n):
            for j in range(n):
                cols[i][j].append(Gm[i, j](alpha) * inv)
    return [[PowerSeriesQ(cols[i][j]) for j in range(n)] for i in range(n)]
