from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import nonzero_scalars, scalars, small_rationals, step_functions
from rhpwn.exact import I, ONE, SQRT2, ZERO, ExactScalar, parse_rational, scalar
from rhpwn.poly import var
from rhpwn.serialize import (poly_from_json, poly_to_json, scalar_from_json, scalar_to_json, stepfn_from_json,
                             stepfn_to_json)
from rhpwn.stepfn import StepFunction, chi


# -- exact scalars ----------------------------------------------------------------

def test_field_basics():
    assert I * I == -ONE
    assert SQRT2 * SQRT2 == scalar(2)
    assert (ONE + I).inverse() == ExactScalar(Fraction(1, 2), 0, Fraction(-1, 2))
    assert str(ExactScalar(1, 0, -1)) == "1-i"
    assert str(SQRT2) == "√2"
    assert (SQRT2 - 1).sign() == 1
    assert (ExactScalar(Fraction(7, 5)) - SQRT2).sign() == -1


def test_parse_rational_rejects_floats():
    assert parse_rational("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        parse_rational(0.5)
    with pytest.raises(TypeError):
        parse_rational(True)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@settings(max_examples=500)
@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x.conjugate().conjugate() == x
    if x:
        assert x * x.inverse() == ONE


@given(nonzero_scalars)
def test_abs2_is_positive(x):
    assert x.abs2().is_real() and x.abs2().sign() == 1


@given(scalars)
def test_scalar_json_roundtrip(x):
    assert scalar_from_json(scalar_to_json(x)) == x


# -- polynomials ------------------------------------------------------------------

def test_polynomial_arithmetic():
    c, mu = var("c"), var("mu")
    p = (c + 1) * (c - 1)
    assert p == c ** 2 - 1
    assert str(2 * c * mu) == "2*c*μ"
    assert p.evaluate({"c": 3}) == scalar(8)
    assert p.subs({"c": mu + 1}) == mu ** 2 + 2 * mu
    assert (c * mu ** 2 + c).coefficient({"μ": 2}) == c


@settings(max_examples=200)
@given(scalars, scalars, small_rationals, small_rationals)
def test_polynomial_evaluation_is_a_homomorphism(a, b, cv, mv):
    c, mu = var("c"), var("mu")
    p = c * a + mu * mu * b + 1
    q = c * mu * b - a
    at = {"c": cv, "mu": mv}
    assert (p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at)
    assert (p + q).evaluate(at) == p.evaluate(at) + q.evaluate(at)


def test_poly_json_roundtrip():
    p = var("c") ** 2 * I + var("k") * var("K") - 3
    assert poly_from_json(poly_to_json(p)) == p


def test_polynomial_conjugation_treats_parameters_as_real():
    p = var("c") * I
    assert p.conjugate() == var("c") * (-I)


# -- step functions -----------------------------------------------------------------

def test_intervals_are_left_open():
    f = chi(0, 1)
    assert f(0) == ZERO and f(1) == ONE and f(Fraction(1, 2)) == ONE
    assert f.vanishes_at_zero()


def test_indicator_product_and_integral():
    f = chi(0, 2) * 3
    g = chi(1, 3)
    assert (f * g) == chi(1, 2) * 3
    assert (f * g).integral() == scalar(3)
    assert chi(0, 1).disjoint_from(chi(1, 2))


def test_adjacent_equal_pieces_merge():
    assert chi(0, 1) + chi(1, 2) == chi(0, 2)
    with pytest.raises(ValueError):
        StepFunction([(0, 2, 1), (1, 3, 1)])


@settings(max_examples=200)
@given(step_functions(), step_functions(), step_functions())
def test_step_function_algebra(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g).integral() == f.integral() + g.integral()
    assert (f * g).conjugate() == f.conjugate() * g.conjugate()
    assert (f - f).is_zero()
    assert (f * f.conjugate()).integral().is_real()


@given(step_functions())
def test_step_function_json_roundtrip(f):
    assert stepfn_from_json(stepfn_to_json(f)) == f
