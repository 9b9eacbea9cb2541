from fractions import Fraction

import pytest
from hypothesis import given

from conftest import gauss, nonzero_gauss
from hkit.poly import parse_scalar
from hkit.scalar import GaussRat, I_UNIT, ONE, ZERO, format_scalar, gauss_sqrt, rational_root


def test_parts_are_reduced_fractions():
    z = GaussRat(Fraction(2, 4), Fraction(-3, 6))
    assert (z.re, z.im) == (Fraction(1, 2), Fraction(-1, 2))
    assert z.re.denominator > 0


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 3


def test_rejects_floats():
    with pytest.raises(TypeError):
        GaussRat(0.5)


@given(nonzero_gauss)
def test_inverse(a):
    assert a * a.inverse() == ONE


@given(gauss, gauss, gauss)
def test_field_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(gauss)
def test_conjugate_norm(a):
    assert a * a.conjugate() == a.norm()
    assert a.conjugate().conjugate() == a


@given(gauss)
def test_hash_agrees_with_equality(a):
    assert hash(a) == hash(GaussRat(a.re, a.im))
    if a.is_real():
        assert hash(a) == hash(a.re) and a == a.re


def test_i_squared():
    assert I_UNIT * I_UNIT == -ONE
    assert I_UNIT ** -1 == -I_UNIT


@pytest.mark.parametrize("z, text", [
    (GaussRat(Fraction(1, 2)), "1/2"),
    (GaussRat(0, 1), "i"),
    (GaussRat(0, -1), "-i"),
    (GaussRat(Fraction(1, 2), Fraction(-3, 4)), "1/2-3/4*i"),
    (GaussRat(2, 3), "2+3*i"),
    (ZERO, "0"),
])
def test_format(z, text):
    assert format_scalar(z) == text
    assert parse_scalar(text) == z


@given(gauss)
def test_format_round_trip(z):
    assert parse_scalar(format_scalar(z)) == z


@given(gauss)
def test_gauss_sqrt_of_square(z):
    r = gauss_sqrt(z * z)
    assert r is not None and r * r == z * z


def test_gauss_sqrt_missing():
    assert gauss_sqrt(GaussRat(2)) is None
    assert gauss_sqrt(GaussRat(0, 2)) == GaussRat(1, 1) or gauss_sqrt(GaussRat(0, 2)) == GaussRat(-1, -1)
    assert gauss_sqrt(GaussRat(-4)) in (GaussRat(0, 2), GaussRat(0, -2))


def test_rational_root():
    assert rational_root(Fraction(8, 27), 3) == Fraction(2, 3)
    assert rational_root(Fraction(2), 2) is None
