"""Exact scalar ring: Gaussian-rational Laurent coefficients in pi."""

import math
from fractions import Fraction

import pytest
import sympy

from siegeltheta.scalars import PI_ONE, PI_SYMBOL, PI_ZERO, PiScalar


def to_sympy(c: PiScalar):
    """Oracle embedding into sympy's exact arithmetic."""
    pi = sympy.pi
    out = sympy.Integer(0)
    for k, re, im in c.terms():
        coeff = sympy.Rational(re.numerator, re.denominator) \
            + sympy.I * sympy.Rational(im.numerator, im.denominator)
        out += coeff * pi ** k
    return sympy.expand(out)


def test_ring_ops_match_sympy():
    a = PiScalar.from_parts(Fraction(3, 2), Fraction(-1, 3), 1) \
        + PiScalar.from_parts(Fraction(2), 0, -2)
    b = PiScalar.from_parts(Fraction(-5, 7), Fraction(1, 2), 0) \
        + PiScalar.from_parts(Fraction(1), 0, 3)
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


def test_constants():
    assert PI_ZERO.is_zero()
    assert (PI_ONE * PI_ONE - PI_ONE).is_zero()
    assert complex(to_sympy(PI_SYMBOL)) == pytest.approx(math.pi)


def test_float_embedding_is_exact():
    # every float is a dyadic rational, so the round trip must be lossless
    for x in (0.1, -3.75, 1e-17, 2.0 ** 52 + 1.0):
        c = PiScalar.from_number(x)
        assert c.to_complex() == x
    z = complex(-0.3, 0.7)
    assert PiScalar.from_number(z).to_complex() == z


def test_from_number_rationals():
    c = PiScalar.from_number(Fraction(22, 7))
    assert to_sympy(c) == sympy.Rational(22, 7)
    assert PiScalar.from_number(5).to_complex() == 5.0


def test_to_complex_uses_pi_value():
    c = PiScalar.from_parts(Fraction(1), 0, 2)  # pi^2
    assert c.to_complex() == pytest.approx(math.pi ** 2, rel=1e-15)
    d = PiScalar.from_parts(0, Fraction(-1, 4), -1)  # -i/(4 pi)
    assert d.to_complex() == pytest.approx(-0.25j / math.pi, rel=1e-15)


def test_divide_rational():
    c = PiScalar.from_parts(Fraction(3, 4), Fraction(1, 2), 1)
    d = c.divide_rational(Fraction(3, 2))
    assert to_sympy(d) == sympy.expand(to_sympy(c) / sympy.Rational(3, 2))


def test_abs_norm_bounds_modulus():
    c = PiScalar.from_parts(Fraction(1, 3), Fraction(-2, 5), 2) \
        + PiScalar.from_parts(Fraction(7), 0, -1)
    assert abs(c.to_complex()) <= c.abs_norm() + 1e-12
