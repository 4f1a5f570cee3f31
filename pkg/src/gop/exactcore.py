"""Exact arithmetic over Q: dense polynomials, reduced rational functions and
square matrices of rational functions.

Rationals are plain :class:`fractions.Fraction` values.  All objects are
immutable; every operation returns a new value.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from typing import Iterable, Sequence

RationalQ = Fraction


def Q(x) -> Fraction:
    """Coerce ints, strings ("p/q") and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return Fraction(x)


def den_of_rationals(xs: Iterable) -> int:
    """Least d >= 1 with d*x integral for every x in xs."""
    return reduce(lcm, (Q(x).denominator for x in xs), 1)


class PolyQ:
    """Dense univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [Q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls([c])

    @classmethod
    def z(cls) -> "PolyQ":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "PolyQ":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots) -> "PolyQ":
        p = cls.const(1)
        for r in roots:
            p = p * cls([-Q(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyQ.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("PolyQ", self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"PolyQ({self})"

    def __str__(self):
        return format_poly(self)

    # ring operations
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyQ([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return PolyQ([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self.coeffs])
        if not isinstance(other, PolyQ):
            return NotImplemented
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = PolyQ.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "PolyQ":
        return PolyQ([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lead
        quo = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quo[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return PolyQ(quo), PolyQ(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def exact_div(self, other: "PolyQ") -> "PolyQ":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return PolyQ([c * inv for c in self.coeffs])

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if self.is_zero():
            return Fraction(0)
        d = den_of_rationals(self.coeffs)
        g = reduce(gcd, (int(c * d) for c in self.coeffs))
        return Fraction(abs(g), d)

    def primitive(self) -> "PolyQ":
        """Integer polynomial with content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lead < 0:
            c = -c
        return PolyQ([x / c for x in self.coeffs])

    def valuation(self) -> int:
        """Order of vanishing at 0; raises for the zero polynomial."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("valuation of the zero polynomial")

    def shift(self, alpha) -> "PolyQ":
        """Return p(z + alpha)."""
        alpha = Q(alpha)
        if alpha == 0 or self.is_constant():
            return self
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        powers = [Fraction(1)]
        for _ in range(n):
            powers.append(powers[-1] * alpha)
        for k, c in enumerate(self.coeffs):
            if c:
                for j in range(k + 1):
                    out[j] += c * comb(k, j) * powers[k - j]
        return PolyQ(out)

    def scale(self, xi) -> "PolyQ":
        """Return p(xi*z)."""
        xi = Q(xi)
        return PolyQ([c * xi**k for k, c in enumerate(self.coeffs)])

    def reverse(self, d: int) -> "PolyQ":
        """Return z^d p(1/z); requires d >= degree."""
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return PolyQ(cs[::-1])

    def truncate(self, n: int) -> "PolyQ":
        return PolyQ(self.coeffs[:n])


def _as_poly(x):
    if isinstance(x, PolyQ):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyQ.const(x)
    return None


def poly_mul(a: PolyQ, b: PolyQ) -> PolyQ:
    if a.is_zero() or b.is_zero():
        return PolyQ()
    # common-denominator trick: integer convolution is far cheaper than Fractions
    da, db = den_of_rationals(a.coeffs), den_of_rationals(b.coeffs)
    ia = [int(c * da) for c in a.coeffs]
    ib = [int(c * db) for c in b.coeffs]
    out = [0] * (len(ia) + len(ib) - 1)
    for i, x in enumerate(ia):
        if x:
            for j, y in enumerate(ib):
                out[i + j] += x * y
    d = da * db
    return PolyQ([Fraction(c, d) for c in out])


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd (zero only when both inputs are zero)."""
    a, b = a.primitive(), b.primitive()
    while b:
        a, b = b, _prem_primitive(a, b)
    return a.monic()


def _prem_primitive(a: PolyQ, b: PolyQ) -> PolyQ:
    # remainder over Z, then content removed: keeps coefficient growth tame
    return (a % b).primitive()


def poly_lcm(a: PolyQ, b: PolyQ) -> PolyQ:
    if a.is_zero() or b.is_zero():
        return PolyQ()
    return (a * b.exact_div(poly_gcd(a, b))).monic()


def house_poly(w: PolyQ) -> Fraction:
    """Largest absolute value of a coefficient (0 for the zero polynomial)."""
    return max((abs(c) for c in w.coeffs), default=Fraction(0))


class RatFuncQ:
    """Reduced rational function num/den with den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _as_poly(num) if not isinstance(num, PolyQ) else num
        if den is None:
            den = PolyQ.const(1)
        elif not isinstance(den, PolyQ):
            den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = PolyQ(), PolyQ.const(1)
        elif not _reduced:
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lead
            if lc != 1:
                num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "RatFuncQ":
        if isinstance(x, RatFuncQ):
            return x
        if isinstance(x, PolyQ):
            return cls(x, _reduced=True)
        return cls(PolyQ.const(Q(x)), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> PolyQ:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __eq__(self, other):
        if not isinstance(other, RatFuncQ):
            other = _coerce_or_none(other)
            if other is None:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RatFuncQ({self})"

    def __str__(self):
        if self.is_polynomial():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RatFuncQ(a + c, b)
        g = poly_gcd(b, d)
        if g.is_constant():
            return RatFuncQ(a * d + c * b, b * d, _reduced=True)._normalized()
        bg, dg = b.exact_div(g), d.exact_div(g)
        num = a * dg + c * bg
        den = b * dg
        g2 = poly_gcd(num, g)
        if not g2.is_constant():
            num, den = num.exact_div(g2), den.exact_div(g2)
        return RatFuncQ(num, den, _reduced=True)._normalized()

    __radd__ = __add__

    def __neg__(self):
        return RatFuncQ(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFuncQ.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFuncQ(PolyQ())
            return RatFuncQ(self.num * other, self.den, _reduced=True)
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFuncQ(PolyQ())
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = poly_gcd(a, d) if not d.is_constant() else PolyQ.const(1)
        g2 = poly_gcd(c, b) if not b.is_constant() else PolyQ.const(1)
        if not g1.is_constant():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_constant():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFuncQ(a * c, b * d, _reduced=True)._normalized()

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncQ":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFuncQ(self.den, self.num, _reduced=True)._normalized()

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFuncQ.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFuncQ(self.num**k, self.den**k, _reduced=True)

    def _normalized(self) -> "RatFuncQ":
        lc = self.den.lead
        if lc == 1:
            return self
        inv = 1 / lc
        return RatFuncQ(self.num * inv, self.den * inv, _reduced=True)

    def derivative(self) -> "RatFuncQ":
        n, d = self.num, self.den
        if d.is_constant():
            return RatFuncQ(n.derivative(), d, _reduced=True)
        dd = d.derivative()
        g = poly_gcd(d, dd)
        dg = d.exact_div(g)
        # already reduced: each prime of d divides d/g exactly once
        num = n.derivative() * dg - n * dd.exact_div(g)
        return RatFuncQ(num, d * dg, _reduced=True)._normalized()

    def __call__(self, x):
        dv = self.den(x)
        if dv == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / dv

    def shift(self, alpha) -> "RatFuncQ":
        """Return f(z + alpha)."""
        return RatFuncQ(self.num.shift(alpha), self.den.shift(alpha), _reduced=True)._normalized()

    def scale(self, xi) -> "RatFuncQ":
        return RatFuncQ(self.num.scale(xi), self.den.scale(xi))

    def compose_inverse(self) -> "RatFuncQ":
        """Return f(1/z)."""
        if self.is_zero():
            return self
        dn, dd = self.num.degree, self.den.degree
        m = max(dn, dd)
        num = self.num.reverse(m)
        den = self.den.reverse(m)
        return RatFuncQ(num, den, _reduced=True)._normalized()

    def series(self, n: int) -> list[Fraction]:
        """First n Taylor coefficients at 0; the denominator must not vanish at 0."""
        d0 = self.den[0]
        if d0 == 0:
            raise ValueError(f"{self} has a pole at 0")
        inv = 1 / d0
        out: list[Fraction] = []
        dc = self.den.coeffs
        for k in range(n):
            acc = self.num[k]
            for j in range(1, min(k, len(dc) - 1) + 1):
                acc -= dc[j] * out[k - j]
            out.append(acc * inv)
        return out


def _coerce_or_none(x):
    if isinstance(x, RatFuncQ):
        return x
    if isinstance(x, (PolyQ, int, Fraction)):
        return RatFuncQ.coerce(x)
    return None


def pole_order(f: RatFuncQ, alpha) -> int:
    """Order of the pole of f at alpha (negative for a zero)."""
    f = RatFuncQ.coerce(f)
    if f.is_zero():
        raise ValueError("pole order of the zero function is undefined")
    lin = PolyQ([-Q(alpha), 1])
    return _multiplicity(f.den, lin) - _multiplicity(f.num, lin)


def _multiplicity(p: PolyQ, lin: PolyQ) -> int:
    k = 0
    while True:
        q, r = p.divmod(lin)
        if r:
            return k
        p, k = q, k + 1


class MatRF:
    """Square matrix of RatFuncQ entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(RatFuncQ.coerce(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("MatRF must be a nonempty square matrix")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "MatRF":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> "MatRF":
        return cls([[0] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for r in self.rows:
            yield from r

    def __eq__(self, other):
        return isinstance(other, MatRF) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "MatRF(" + str([[str(x) for x in r] for r in self.rows]) + ")"

    def map(self, fn) -> "MatRF":
        return MatRF([[fn(x) for x in r] for r in self.rows])

    def __add__(self, other: "MatRF") -> "MatRF":
        return MatRF([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatRF") -> "MatRF":
        return MatRF([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def scale(self, c) -> "MatRF":
        c = RatFuncQ.coerce(c)
        return self.map(lambda x: x * c)

    def __matmul__(self, other: "MatRF") -> "MatRF":
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = RatFuncQ(PolyQ())
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatRF(out)

    def apply(self, v: Sequence) -> list[RatFuncQ]:
        """Matrix-vector product."""
        out = []
        for r in self.rows:
            acc = RatFuncQ(PolyQ())
            for a, b in zip(r, v):
                b = RatFuncQ.coerce(b)
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def derivative(self) -> "MatRF":
        return self.map(RatFuncQ.derivative)

    def transpose(self) -> "MatRF":
        return MatRF(list(zip(*self.rows)))

    def is_polynomial(self) -> bool:
        return all(x.is_polynomial() for x in self.entries())

    def det(self) -> RatFuncQ:
        m = [list(r) for r in self.rows]
        n = self.n
        det = RatFuncQ.coerce(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                return RatFuncQ(PolyQ())
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            piv = m[c][c]
            det = det * piv
            inv = piv.inverse()
            for r in range(c + 1, n):
                if m[r][c]:
                    f = m[r][c] * inv
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return det

    def inverse(self) -> "MatRF":
        n = self.n
        one, zero = RatFuncQ.coerce(1), RatFuncQ(PolyQ())
        m = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c]), None)
            if p is None:
                raise ZeroDivisionError("singular rational-function matrix")
            m[c], m[p] = m[p], m[c]
            inv = m[c][c].inverse()
            m[c] = [x * inv for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return MatRF([row[n:] for row in m])

    def shift(self, alpha) -> "MatRF":
        return self.map(lambda x: x.shift(alpha))

    def compose_inverse(self) -> "MatRF":
        return self.map(RatFuncQ.compose_inverse)


def common_denominator_matrix(m: MatRF) -> PolyQ:
    """Monic lcm of the entry denominators."""
    return reduce(poly_lcm, (x.den for x in m.entries()), PolyQ.const(1))


def poly_matrix_coefficients(m: MatRF) -> list[Fraction]:
    """All rational coefficients of a polynomial matrix."""
    out = []
    for x in m.entries():
        out.extend(x.as_poly().coeffs)
    return out


def rational_roots(p: PolyQ) -> tuple[list[tuple[Fraction, int]], list[PolyQ]]:
    """Rational roots of p with multiplicity, plus irreducible factors of degree >= 2.

    Factorisation over Q is delegated to sympy.
    """
    import sympy

    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if p.is_constant():
        return [], []
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    roots, other = [], []
    for f, mult in factors:
        cs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(f.all_coeffs())]
        fp = PolyQ(cs)
        if fp.degree == 1:
            roots.append((-fp[0] / fp[1], mult))
        else:
            other.extend([fp.monic()] * mult)
    roots.sort()
    return roots, other


def format_rational(c: Fraction) -> str:
    return str(c)


def format_poly(p: PolyQ, var: str = "z") -> str:
    """Canonical string, ascending degree: '1 - 3/2*z + z^2'."""
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append((c, mono))
    return join_terms(parts)


def join_terms(parts: list[tuple[Fraction, str]]) -> str:
    """Render signed (coefficient, monomial) pairs as 'a + b*m - c*m2'.

    The first term carries its sign inside the literal ('-1*z'), later terms
    use binary ' + ' / ' - '.
    """
    out = []
    for idx, (c, mono) in enumerate(parts):
        if idx == 0:
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        else:
            sign = " - " if c < 0 else " + "
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append(sign + body)
    return "".join(out)
