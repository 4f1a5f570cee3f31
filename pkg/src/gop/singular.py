"""Local analysis of differential operators on the projective line.

Every point is moved to the origin (translation for finite points, the
companion-system inversion for infinity) and then classified from the
normal form z^n y^(n) - sum_k z^k B_k y^(k).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf, perm

from .diffop import DiffOp, ZeroNormalForm, companion, to_zero_normal_form
from .exactcore import MatRF, PolyQ, Q, RatFuncQ, pole_order, rational_roots
from .linalg import nullspace
from .powerseries import PowerSeriesQ
from .systems import SystemQ, c_coeffs, gauge_transform, invert_variable

ORDINARY = "ordinary"
REGULAR = "regular-singular"
IRREGULAR = "irregular"
APPARENT = "apparent"
INFINITY = "inf"
NON_RATIONAL = "non-rational"


def _fmt(x) -> str:
    return "-inf" if x == -inf else str(x)


@dataclass(frozen=True)
class ApparentResult:
    apparent: bool
    holomorphic_dim: int
    order: int
    verify_order: int
    witness: tuple  # truncated holomorphic solutions
    vanishing_order: int | None  # least valuation over the solution space

    def __bool__(self):
        return self.apparent


@dataclass(frozen=True)
class SingularityReport:
    point: object  # Fraction or "inf"
    kind: str
    lam: object  # Fraction or -inf
    exponents: tuple | None = None
    holomorphic_dim: int | None = None
    apparent: ApparentResult | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "point": self.point if self.point == INFINITY else str(self.point),
            "kind": self.kind,
            "lambda": _fmt(self.lam),
            "exponents": None if self.exponents is None else [str(e) for e in self.exponents],
            "holomorphic_dim": self.holomorphic_dim,
        }


@dataclass(frozen=True)
class FuchsSummary:
    operator: DiffOp
    reports: tuple
    is_fuchsian: bool
    unresolved: tuple = ()

    @property
    def singular_points(self) -> list:
        return [r.point for r in self.reports if r.kind != ORDINARY]

    def to_dict(self) -> dict:
        return {
            "operator": str(self.operator),
            "is_fuchsian": self.is_fuchsian,
            "singular_points": [p if p == INFINITY else str(p) for p in self.singular_points],
            "points": [r.to_dict() for r in self.reports],
            "unresolved": [str(p) for p in self.unresolved],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def lambda_at_zero(nf: ZeroNormalForm):
    """max_k v(B_{n-k})/k with v the pole order at 0 and v(0) = -inf."""
    best = -inf
    for k in range(1, nf.n + 1):
        b = nf.B[nf.n - k]
        if b.is_zero():
            continue
        val = Fraction(pole_order(b, 0), k)
        if best == -inf or val > best:
            best = val
    return best


def _indicial_poly(nf: ZeroNormalForm) -> PolyQ:
    # rho^(n falling) - sum_k B_k(0) rho^(k falling)
    def falling(k):
        return PolyQ.from_roots(range(k)) if k else PolyQ.const(1)

    p = falling(nf.n)
    for k, b in enumerate(nf.B):
        if not b.is_zero():
            p = p - falling(k) * b(0)
    return p


def _indicial_at_zero(L: DiffOp) -> tuple:
    nf = to_zero_normal_form(L)
    lam = lambda_at_zero(nf)
    if lam != -inf and lam > 0:
        raise ValueError("irregular point has no indicial polynomial")
    roots, other = rational_roots(_indicial_poly(nf))
    out = [r for r, m in roots for _ in range(m)]
    out += [NON_RATIONAL] * sum(f.degree for f in other)
    return tuple(out)


def indicial_roots(L: DiffOp, alpha=0) -> tuple:
    """Indicial exponents at alpha with multiplicity; irrational ones appear as NON_RATIONAL."""
    return _indicial_at_zero(L.translate(Q(alpha)))


def _apparent_at_zero(L: DiffOp, verify_order: int | None, exponents) -> ApparentResult:
    mu = L.order
    ints = [e for e in exponents if e != NON_RATIONAL and e.denominator == 1]
    top = max([0] + [int(e) for e in ints])
    if verify_order is None:
        verify_order = mu + top + 10
    if verify_order <= top:
        raise ValueError(f"verify_order {verify_order} does not exceed the largest integer exponent {top}")
    polys = [c.as_poly() for c in L.clear_denominators().coeffs]
    sigma = min(j - k for k, p in enumerate(polys) for j, c in enumerate(p.coeffs) if c)
    K = verify_order
    rows = []
    # coefficient of u^m in L(sum y_i u^i); y_i enters with i = m + k - j
    for m in range(sigma, K + sigma):
        row = [Fraction(0)] * K
        for k, p in enumerate(polys):
            for j, c in enumerate(p.coeffs):
                i = m + k - j
                if c and 0 <= i < K and i >= k:
                    row[i] += c * perm(i, k)
        rows.append(row)
    basis = nullspace(rows, K)
    witness = tuple(PowerSeriesQ(v).scale(1 / next(x for x in v if x)) for v in basis)
    vals = [w.valuation() for w in witness]
    van = min((v for v in vals if v is not None), default=None)
    return ApparentResult(len(basis) == mu, len(basis), mu, K, witness, van)


def is_apparent(L: DiffOp, alpha=0, verify_order: int | None = None) -> ApparentResult:
    """Whether every formal solution at alpha is a power series (full holomorphic basis).

    The dimension comes from the nullspace of the coefficient equations on
    verify_order unknowns; the default is order + max(0, largest integer
    exponent) + 10.
    """
    La = L.translate(Q(alpha))
    return _apparent_at_zero(La, verify_order, _indicial_at_zero(La))


def _classify_at_zero(L: DiffOp, point, verify_order=None) -> SingularityReport:
    nf = to_zero_normal_form(L)
    lam = lambda_at_zero(nf)
    if lam == -inf or lam <= -1:
        exps = tuple(Fraction(k) for k in range(L.order))
        return SingularityReport(point, ORDINARY, lam, exps, L.order)
    if lam > 0:
        return SingularityReport(point, IRREGULAR, lam)
    exps = _indicial_at_zero(L)
    res = _apparent_at_zero(L, verify_order, exps)
    kind = APPARENT if res.apparent else REGULAR
    return SingularityReport(point, kind, lam, exps, res.holomorphic_dim, res)


def classify_point(L: DiffOp, alpha, verify_order: int | None = None) -> SingularityReport:
    alpha = Q(alpha)
    return _classify_at_zero(L.translate(alpha), alpha, verify_order)


def inversion_gauge(mu: int) -> MatRF:
    """P with (w, w', ..., w^(mu-1))(u) = P(u) (y, ..., y^(mu-1))(1/u) for w(u) = y(1/u)."""
    table = c_coeffs(max(mu - 1, 1))
    rows = [[0] * mu for _ in range(mu)]
    rows[0][0] = 1
    for s in range(1, mu):
        for k in range(1, s + 1):
            rows[s][k] = RatFuncQ(PolyQ.const((-1) ** s * table(s, k)), PolyQ.monomial(s + k))
    return MatRF(rows)


def operator_at_infinity(L: DiffOp) -> DiffOp:
    """Operator in u = 1/z read off the gauge transform of the inverted companion system."""
    mu = L.order
    if mu < 1:
        raise ValueError("operator of order >= 1 required")
    Gt = invert_variable(SystemQ.from_matrix(companion(L))).G
    B = gauge_transform(inversion_gauge(mu), Gt)
    for i in range(mu - 1):
        for j in range(mu):
            if B[i, j] != RatFuncQ.coerce(int(j == i + 1)):
                raise AssertionError("gauge-transformed system is not a companion system")
    return DiffOp([-B[mu - 1, k] for k in range(mu)] + [1])


def classify_infinity(L: DiffOp, verify_order: int | None = None) -> SingularityReport:
    return _classify_at_zero(operator_at_infinity(L), INFINITY, verify_order)


def candidate_points(L: DiffOp) -> tuple[list[Fraction], list[PolyQ]]:
    """Rational roots of coefficient denominators and of the leading numerator, plus irrational factors."""
    polys = [c.den for c in L.coeffs] + [L.leading.num]
    pts, other = set(), []
    for p in polys:
        if p.degree < 1:
            continue
        roots, irr = rational_roots(p)
        pts.update(r for r, _ in roots)
        for f in irr:
            if f not in other:
                other.append(f)
    return sorted(pts), other


def fuchs_summary(L: DiffOp, verify_order: int | None = None) -> FuchsSummary:
    if L.order < 1:
        raise ValueError("operator of order >= 1 required")
    pts, unresolved = candidate_points(L)
    reports = [classify_point(L, a, verify_order) for a in pts]
    reports.append(classify_infinity(L, verify_order))
    fuchsian = all(r.kind != IRREGULAR for r in reports)
    return FuchsSummary(L, tuple(reports), fuchsian, tuple(unresolved))
