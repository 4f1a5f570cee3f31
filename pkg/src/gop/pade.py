"""Simultaneous (type II) Padé approximants and the twisted derivative calculus.

For series f_1..f_n a solution is Q with deg Q <= N such that every Q f_i
agrees with a polynomial P_i of degree <= N up to O(z^(N+M)).  Given a
system y' = G y, P_h = (D - G)^h P / h! are the twisted derivatives.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exactcore import MatRF, PolyQ, RatFuncQ, house_poly
from .linalg import integer_vector, nullspace
from .powerseries import PowerSeriesQ
from .systems import SystemQ, iterate


@dataclass(frozen=True)
class PadeProblem:
    f: tuple
    N: int
    M: int

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if not self.f:
            raise ValueError("at least one series is required")
        if self.N < 0 or self.M < 1:
            raise ValueError("need N >= 0 and M >= 1")
        short = [len(g) for g in self.f if len(g) < self.N + self.M]
        if short:
            raise ValueError(f"series need at least N+M = {self.N + self.M} terms, got {min(short)}")


@dataclass(frozen=True)
class PadeSolution:
    Q: PolyQ
    P: tuple
    contact: int
    contact_is_lower_bound: bool  # the residual vanished on the whole truncation
    integer_flag: bool
    problem: PadeProblem | None = None

    @property
    def house(self) -> Fraction:
        return house_poly(self.Q)

    def to_dict(self) -> dict:
        return {
            "Q": str(self.Q),
            "P": [str(p) for p in self.P],
            "contact": self.contact,
            "contact_is_lower_bound": self.contact_is_lower_bound,
            "house_Q": str(self.house),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _residual(Q: PolyQ, P: PolyQ, f: PowerSeriesQ) -> PowerSeriesQ:
    prod = f.mul_poly(Q)
    return PowerSeriesQ([c - P[k] for k, c in enumerate(prod.coeffs)])


def solve_pade(prob: PadeProblem) -> PadeSolution:
    """Lowest-index nullspace vector of the contact equations, made integral.

    Unknowns are q_0..q_N; each series contributes the equations
    [z^k](Q f_i) = 0 for N < k < N+M.
    """
    N, M = prob.N, prob.M
    rows = []
    for g in prob.f:
        for k in range(N + 1, N + M):
            rows.append([g[k - j] if k - j >= 0 else Fraction(0) for j in range(N + 1)])
    basis = nullspace(rows, N + 1)
    if not basis:
        raise ValueError("only the zero solution exists; lower M or raise N")
    Q = PolyQ(integer_vector(basis[0], sign="first"))
    P = tuple(PolyQ(g.mul_poly(Q).coeffs[: N + 1]) for g in prob.f)
    vals = []
    for g, p in zip(prob.f, P):
        v = _residual(Q, p, g).valuation()
        # a residual vanishing on the whole truncation only bounds the contact from below
        vals.append((len(g), True) if v is None else (v, False))
    contact = min(v for v, _ in vals)
    bound = any(lb for v, lb in vals if v == contact)
    if contact < N + M:
        raise AssertionError("solver produced insufficient contact")
    return PadeSolution(Q, P, contact, bound, True, prob)


def twisted_power(G: MatRF, P, h: int) -> list[RatFuncQ]:
    """(D - G)^h P / h!."""
    if h < 0:
        raise ValueError("h must be >= 0")
    v = [RatFuncQ.coerce(p) for p in P]
    for _ in range(h):
        Gv = G.apply(v)
        v = [x.derivative() - y for x, y in zip(v, Gv)]
    inv = Fraction(1, factorial(h))
    return [x * inv for x in v]


def derivative_relation_check(sys: SystemQ, sol: PadeSolution, m: int, f=None) -> bool:
    """T^m Q^(m)/m! f - T^m P_m = O(z^(N+M-m)) on the available truncation.

    ``f`` defaults to the problem's series and must solve f' = G f.
    """
    prob = sol.problem
    fs = prob.f if f is None else f
    N, M = prob.N, prob.M
    if m >= N + M:
        raise ValueError("m must be below N+M")
    Tm = sys.T**m
    Qm = sol.Q
    for _ in range(m):
        Qm = Qm.derivative()
    left = Tm * Qm * Fraction(1, factorial(m))
    Pm = twisted_power(sys.G, sol.P, m)
    target = N + M - m
    for g, pm in zip(fs, Pm):
        right = RatFuncQ.coerce(Tm) * pm
        if not right.is_polynomial():
            return False
        res = _residual(left, right.as_poly(), g)
        if any(res.coeffs[: min(target, len(res))]):
            return False
    return True


def leibniz_identity_check(sys: SystemQ, P, s: int, iterates=None) -> bool:
    """G_s/s! P = sum_j (-1)^j / ((s-j)! j!) D^(s-j) (D - G)^j P.

    The left side uses the iterated matrices (``iterates`` may override
    them, e.g. for a corrupted cache); the right side uses twisted_power.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    it = iterates if iterates is not None else iterate(sys, s)
    v = [RatFuncQ.coerce(p) for p in P]
    left = [x * Fraction(1, factorial(s)) for x in it[s].apply(v)]
    right = [RatFuncQ.coerce(0)] * len(v)
    for j in range(s + 1):
        w = twisted_power(sys.G, v, j)
        for _ in range(s - j):
            w = [x.derivative() for x in w]
        c = Fraction((-1) ** j, factorial(s - j))
        right = [a + x * c for a, x in zip(right, w)]
    return left == right


@dataclass(frozen=True)
class PadeWitness:
    system: SystemQ
    solution: PadeSolution
    Ph: tuple
    R: tuple
    detR0: RatFuncQ

    @property
    def nonsingular(self) -> bool:
        return not self.detR0.is_zero()


def twisted_column_matrix(Ph, n: int, h: int) -> MatRF:
    """Column j (1-based) is binom(h+j-1, j-1) P_{h+j-1}."""
    cols = [[x * comb(h + j - 1, j - 1) for x in Ph[h + j - 1]] for j in range(1, n + 1)]
    return MatRF([[cols[j][i] for j in range(n)] for i in range(n)])


def build_witness(sys: SystemQ, sol: PadeSolution, h_max: int = 0) -> PadeWitness:
    n = sys.n
    if len(sol.P) != n:
        raise ValueError("solution and system dimensions differ")
    Ph = tuple(tuple(twisted_power(sys.G, sol.P, h)) for h in range(h_max + n))
    R = tuple(twisted_column_matrix(Ph, n, h) for h in range(h_max + 1))
    return PadeWitness(sys, sol, Ph, R, R[0].det())


def preset_parameters(n: int, t: int, s: int) -> tuple[int, int]:
    """N = 2n(t+1)(s+n-1), M = N/(2n)."""
    N = 2 * n * (t + 1) * (s + n - 1)
    return N, N // (2 * n)


def reconstruct_rational(g: PowerSeriesQ, max_degree: int) -> RatFuncQ | None:
    """P/Q with deg P, deg Q <= max_degree whose expansion matches every known coefficient of g."""
    N = max_degree
    if len(g) < 2 * N + 2:
        raise ValueError(f"need at least {2 * N + 2} coefficients")
    sol = solve_pade(PadeProblem([g], N, N + 1))
    if sol.Q[0] == 0 or not sol.contact_is_lower_bound:
        return None
    return RatFuncQ(sol.P[0], sol.Q)
