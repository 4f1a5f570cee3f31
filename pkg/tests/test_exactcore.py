import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gop.exactcore import (
    MatRF,
    PolyQ,
    Q,
    RatFuncQ,
    common_denominator_matrix,
    den_of_rationals,
    format_poly,
    house_poly,
    pole_order,
    poly_gcd,
    poly_mul,
    rational_roots,
)

from conftest import ONE, nonzero_polys, polys, ratfuncs, small_frac, z

X = sympy.Symbol("z")


def to_sympy(p: PolyQ):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(p.coeffs))


def rf_to_sympy(r: RatFuncQ):
    return to_sympy(r.num) / to_sympy(r.den)


def test_poly_mul_examples():
    assert poly_mul(ONE - z, ONE + z) == ONE - z**2
    assert poly_mul(PolyQ(), Fraction(3, 2) + z).is_zero()
    assert poly_mul(1 + 2 * z, 1 + 3 * z) == PolyQ([1, 5, 6])


def test_zero_polynomial_degree():
    assert PolyQ().degree == -1
    assert PolyQ([0, 0]).degree == -1
    assert PolyQ([1, 0, 0]).degree == 0


def test_common_denominator_examples():
    log = MatRF([[0, 1], [0, RatFuncQ(ONE, ONE - z)]])
    assert common_denominator_matrix(log) == z - 1
    assert common_denominator_matrix(MatRF.identity(3)) == ONE
    m = MatRF([[RatFuncQ(ONE, z), RatFuncQ(ONE, z**2)], [1, RatFuncQ(ONE, z * (z - 1))]])
    assert common_denominator_matrix(m) == z**2 * (z - 1)


def test_den_of_rationals_examples():
    assert den_of_rationals([1, Fraction(1, 2), Fraction(1, 3)]) == 6
    assert den_of_rationals([]) == 1
    assert den_of_rationals([Fraction(3, 4), Fraction(5, 6), Fraction(7, 10)]) == 60


def test_house_examples():
    assert house_poly(PolyQ([1, -3, Fraction(1, 2)])) == 3
    assert house_poly(PolyQ()) == 0
    assert house_poly((1 + 2 * z) ** 2) == 4


def test_pole_order_examples():
    assert pole_order(RatFuncQ(ONE, ONE - z), 1) == 1
    assert pole_order(RatFuncQ(z**2), 0) == -2
    assert pole_order(RatFuncQ(z - 1, z**2 * (z + 2)), 0) == 2
    with pytest.raises(ValueError):
        pole_order(RatFuncQ(PolyQ()), 0)


def test_q_rejects_float():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("3/4") == Fraction(3, 4)


def test_format_poly():
    assert format_poly(PolyQ([1, Fraction(-3, 2), 1])) == "1 - 3/2*z + z^2"
    assert format_poly(PolyQ([0, -1])) == "-1*z"


def test_rational_roots():
    roots, other = rational_roots((z - 1) ** 2 * (2 * z + 1) * (z**2 - 2))
    assert roots == [(Fraction(-1, 2), 1), (Fraction(1), 2)]
    assert other == [z**2 - 2]


def test_matrix_inverse_and_det():
    m = MatRF([[z, 1], [0, ONE + z]])
    assert m @ m.inverse() == MatRF.identity(2)
    assert m.det() == RatFuncQ(z * (1 + z))
    with pytest.raises(ZeroDivisionError):
        MatRF([[z, z], [1, 1]]).inverse()


@settings(max_examples=60, deadline=None)
@given(polys(10), polys(10))
def test_house_product_inequality(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert house_poly(a * b) <= (a.degree + b.degree + 1) * house_poly(a) * house_poly(b)


@given(st.lists(small_frac, max_size=8), st.lists(small_frac, max_size=4), st.randoms())
def test_den_monotone_and_permutation_invariant(xs, more, rnd):
    d = den_of_rationals(xs)
    assert den_of_rationals(xs + more) % d == 0
    ys = list(xs)
    rnd.shuffle(ys)
    assert den_of_rationals(ys) == d


@given(ratfuncs(), ratfuncs(), st.integers(-3, 3))
def test_pole_order_additive(f, g, alpha):
    if f.is_zero() or g.is_zero():
        return
    assert pole_order(f * g, alpha) == pole_order(f, alpha) + pole_order(g, alpha)


@given(polys(3), nonzero_polys(3), nonzero_polys(2))
def test_normalization_idempotent(num, den, h):
    assert RatFuncQ(num * h, den * h) == RatFuncQ(num, den)


@settings(max_examples=50, deadline=None)
@given(ratfuncs(), ratfuncs())
def test_ratfunc_arithmetic_against_sympy(f, g):
    assert sympy.simplify(rf_to_sympy(f + g) - (rf_to_sympy(f) + rf_to_sympy(g))) == 0
    assert sympy.simplify(rf_to_sympy(f * g) - rf_to_sympy(f) * rf_to_sympy(g)) == 0
    assert sympy.simplify(rf_to_sympy(f.derivative()) - sympy.diff(rf_to_sympy(f), X)) == 0


@given(polys(4), polys(4))
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert (a % g).is_zero() and (b % g).is_zero()
    assert g.lead == 1


@given(polys(4), small_frac)
def test_shift_matches_evaluation(p, alpha):
    q = p.shift(alpha)
    for x in (Fraction(0), Fraction(1), Fraction(-2, 3)):
        assert q(x) == p(x + alpha)


def test_ratfunc_series_and_compose_inverse():
    f = RatFuncQ(ONE, ONE - z)
    assert f.series(5) == [1] * 5
    assert f.compose_inverse() == RatFuncQ(z, z - 1)
    assert f.shift(1) == RatFuncQ(-ONE, z)


def test_random_matrix_inverse_roundtrip():
    rng = random.Random(3)
    for _ in range(10):
        m = MatRF([[RatFuncQ(PolyQ([rng.randint(-3, 3) for _ in range(3)]), PolyQ.from_roots([rng.randint(-2, 2)]))
                    for _ in range(2)] for _ in range(2)])
        if m.det().is_zero():
            continue
        assert m.inverse() @ m == MatRF.identity(2)
