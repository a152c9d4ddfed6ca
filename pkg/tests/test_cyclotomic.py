import random
from fractions import Fraction

import pytest

from wml.cyclotomic import Cyclotomic, cyclotomic_polynomial, euler_phi


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in range(1, 30):
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_roots_of_unity():
    for n in (2, 3, 4, 5, 6, 8, 12):
        z = Cyclotomic.root_of_unity(n)
        assert z**n == 1
        for k in range(1, n):
            assert z**k != 1
    assert Cyclotomic.root_of_unity(2) == Fraction(-1)
    assert Cyclotomic.root_of_unity(6, 3) == Fraction(-1)


def test_field_axioms_random():
    rng = random.Random(11)

    def rand_elt(n):
        return Cyclotomic(n, [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(euler_phi(n))])

    for n in (4, 5, 6, 12):
        for _ in range(20):
            a, b, c = rand_elt(n), rand_elt(n), rand_elt(n)
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            if not a.is_zero():
                assert a * a.inverse() == 1
                assert (b / a) * a == b


def test_mixed_conductor_arithmetic():
    z3, z4 = Cyclotomic.root_of_unity(3), Cyclotomic.root_of_unity(4)
    s = z3 + z4
    assert s.conductor == 12
    assert s - z4 == z3
    # zeta_6 = -zeta_3^2
    assert Cyclotomic.root_of_unity(6) == -(z3 * z3)


def test_conjugation_is_inversion_on_roots():
    for n in (3, 4, 5, 8):
        z = Cyclotomic.root_of_unity(n)
        assert z.conjugate() == z.inverse()
        assert (z + z.conjugate()).is_rational() or n > 4
        a = z + 2
        assert a.conjugate().conjugate() == a


def test_rationality_detection():
    z5 = Cyclotomic.root_of_unity(5)
    s = sum((z5**k for k in range(1, 5)), Cyclotomic.zero())
    assert s == Fraction(-1)  # sum of nontrivial 5th roots
    assert s.is_rational() and s.to_fraction() == -1
    with pytest.raises(ValueError):
        z5.to_fraction()


def test_complex_embedding():
    import cmath

    z8 = Cyclotomic.root_of_unity(8)
    assert abs(z8.to_complex() - cmath.exp(2j * cmath.pi / 8)) < 1e-12


def test_json_roundtrip():
    z12 = Cyclotomic.root_of_unity(12) * Fraction(3, 7) + 1
    again = Cyclotomic.from_json(z12.to_json())
    assert again == z12
