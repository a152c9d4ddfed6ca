from fractions import Fraction

import pytest

from wml.cyclotomic import Cyclotomic
from wml.rational import Poly, RationalFunctionN


def test_falling_factorial():
    assert Poly.falling_factorial(0) == Poly((1,))
    assert Poly.falling_factorial(1) == Poly((0, 1))
    assert Poly.falling_factorial(2) == Poly((0, -1, 1))
    assert Poly.falling_factorial(3).eval(5) == 5 * 4 * 3


def test_poly_arithmetic():
    p = Poly((1, 2))       # 1 + 2n
    q = Poly((0, 0, 1))    # n^2
    assert (p * q).eval(3) == p.eval(3) * q.eval(3)
    assert (p + q).degree() == 2
    quo, rem = q.divmod(p)
    assert quo * p + rem == q


def test_poly_gcd():
    p = Poly.falling_factorial(4)
    q = Poly.falling_factorial(2)
    g = p.gcd(q)
    assert g == q.monic()


def test_rational_reduction():
    f = RationalFunctionN.of(Poly.falling_factorial(4), Poly.falling_factorial(2) * Poly.falling_factorial(2))
    # (n)_4 / ((n)_2 (n)_2) = (n-2)(n-3) / (n(n-1))
    assert f.num.degree() == 2 and f.den.degree() == 2
    assert f.eval(4) == Fraction(1, 6)
    assert f.eval(10) == Fraction(8 * 7, 10 * 9)


def test_rational_algebra():
    one_over_n = RationalFunctionN.of(Poly((1,)), Poly((0, 1)))
    s = one_over_n + one_over_n
    assert s.eval(5) == Fraction(2, 5)
    prod = one_over_n * one_over_n
    assert prod.eval(3) == Fraction(1, 9)
    diff = s - one_over_n
    assert diff == one_over_n
    z = one_over_n - one_over_n
    assert z.is_zero()


def test_leading_pair():
    f = RationalFunctionN.of(Poly((1,)), Poly((0, 2)))  # 1/(2n)
    assert f.leading_pair() == (-1, Fraction(1, 2))
    g = RationalFunctionN.of(Poly((0, 0, 3)), Poly((0, 1)))  # 3n
    assert g.leading_pair() == (1, 3)
    with pytest.raises(ValueError):
        RationalFunctionN.zero().leading_pair()


def test_cyclotomic_coefficients():
    z = Cyclotomic.root_of_unity(3)
    f = RationalFunctionN.of(Poly((z,)), Poly((0, 1)))
    assert f.eval(2) == z / 2
    g = f * z.inverse()
    assert g.eval(2) == Fraction(1, 2)


def test_pole_evaluation_raises():
    f = RationalFunctionN.of(Poly((1,)), Poly((0, 1)))
    with pytest.raises(ZeroDivisionError):
        f.eval(0)


def test_json():
    f = RationalFunctionN.of(Poly((Fraction(1, 2),)), Poly((0, 1)))
    data = f.to_json()
    assert data == {"conductor": 1, "num": [["1/2"]], "den": [["0"], ["1"]]}
    z = Cyclotomic.root_of_unity(3)
    g = RationalFunctionN.of(Poly((z,)), Poly((0, 1)))
    data = g.to_json()
    assert data["conductor"] == 3
    assert data["num"] == [["0", "1"]]
