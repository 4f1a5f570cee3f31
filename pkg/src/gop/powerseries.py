"""Truncated power series with exact rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

from .exactcore import PolyQ, Q, RatFuncQ


@dataclass(frozen=True)
class PowerSeriesQ:
    """Coefficients c_0..c_K of sum c_n z^n.

    ``polynomial`` marks series whose coefficients beyond K are known to vanish.
    """

    coeffs: tuple
    polynomial: bool = field(default=False, compare=False)

    def __init__(self, coeffs: Iterable, polynomial: bool = False):
        object.__setattr__(self, "coeffs", tuple(Q(c) for c in coeffs))
        object.__setattr__(self, "polynomial", polynomial)

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, n: int) -> "PowerSeriesQ":
        """Keep the first n coefficients."""
        return PowerSeriesQ(self.coeffs[:n], self.polynomial and n >= len(self.coeffs))

    def derivative(self) -> "PowerSeriesQ":
        return PowerSeriesQ([k * c for k, c in enumerate(self.coeffs)][1:], self.polynomial)

    def __add__(self, other: "PowerSeriesQ") -> "PowerSeriesQ":
        n = min(len(self), len(other))
        return PowerSeriesQ([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __neg__(self):
        return PowerSeriesQ([-c for c in self.coeffs], self.polynomial)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "PowerSeriesQ":
        c = Q(c)
        return PowerSeriesQ([c * x for x in self.coeffs], self.polynomial)

    def mul_poly(self, p: PolyQ, length: int | None = None) -> "PowerSeriesQ":
        """Product with a polynomial, kept to the length where it is exact."""
        n = len(self) if length is None else min(length, len(self))
        out = [Fraction(0)] * n
        for j, a in enumerate(p.coeffs):
            if a:
                for i in range(n - j):
                    out[i + j] += a * self.coeffs[i]
        return PowerSeriesQ(out)

    def __mul__(self, other: "PowerSeriesQ") -> "PowerSeriesQ":
        n = min(len(self), len(other))
        a, b = self.coeffs, other.coeffs
        return PowerSeriesQ([sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n)])

    def partial_sum(self, x) -> Fraction:
        x = Q(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if all known ones vanish."""
        return next((k for k, c in enumerate(self.coeffs) if c), None)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_poly(self) -> PolyQ:
        return PolyQ(self.coeffs)

    # families
    @classmethod
    def from_ratfunc(cls, f: RatFuncQ, n: int) -> "PowerSeriesQ":
        f = RatFuncQ.coerce(f)
        return cls(f.series(n), polynomial=f.is_polynomial())

    @classmethod
    def from_poly(cls, p: PolyQ, n: int | None = None) -> "PowerSeriesQ":
        n = len(p.coeffs) if n is None else n
        return cls([p[k] for k in range(max(n, 1))], polynomial=n >= len(p.coeffs))

    @classmethod
    def exp(cls, n: int) -> "PowerSeriesQ":
        return cls([Fraction(1, factorial(k)) for k in range(n)])

    @classmethod
    def neg_log1m(cls, n: int) -> "PowerSeriesQ":
        """-log(1 - z)."""
        return cls([Fraction(0)] + [Fraction(1, k) for k in range(1, n)])

    @classmethod
    def geometric(cls, n: int) -> "PowerSeriesQ":
        return cls([Fraction(1)] * n)

    @classmethod
    def poly_times_exp(cls, p: PolyQ, n: int) -> "PowerSeriesQ":
        return cls.exp(n).mul_poly(p)

    @classmethod
    def hyp2f1(cls, a, b, c, n: int) -> "PowerSeriesQ":
        a, b, c = Q(a), Q(b), Q(c)
        out, t = [], Fraction(1)
        for k in range(n):
            out.append(t)
            if c + k == 0:
                raise ValueError("2F1 lower parameter is a nonpositive integer")
            t = t * (a + k) * (b + k) / ((c + k) * (k + 1))
        return cls(out)
