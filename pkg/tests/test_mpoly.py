import random
from fractions import Fraction

import pytest

from linesing.errors import InputError, ParseError
from linesing.mpoly import (InfiniteOrderError, MPoly, parse_polynomial,
                            series_inverse)

TXY = ("t", "x", "y")


def P(text, vars=TXY):
    return parse_polynomial(text, vars)


CUSP_FAMILY = "y^2 - x^3 - t^2*x^2"


# -- parsing ---------------------------------------------------------------

def test_parse_cusp_family():
    f = P(CUSP_FAMILY)
    assert f.terms == {(0, 0, 2): Fraction(1), (0, 3, 0): Fraction(-1),
                       (2, 2, 0): Fraction(-1)}


def test_parse_zero():
    assert P("0").is_zero()


def test_parse_rational_coefficients():
    f = P("3/4*x - 2/5")
    assert f.terms == {(0, 1, 0): Fraction(3, 4),
                       (0, 0, 0): Fraction(-2, 5)}


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        P("x^y")
    assert err.value.offset == 2
    with pytest.raises(ParseError) as err:
        P("")
    assert err.value.offset == 0
    with pytest.raises(ParseError) as err:
        P("x + z")
    assert err.value.offset == 4
    with pytest.raises(ParseError) as err:
        P("x^0")
    assert err.value.offset == 2
    with pytest.raises(ParseError) as err:
        P("2 x")        # implicit multiplication is not in the grammar
    assert err.value.offset == 2
    with pytest.raises(ParseError) as err:
        P("x + @")
    assert err.value.offset == 4


def test_parse_leading_sign_and_spacing():
    assert P("-x + y") == P("y - x")
    assert P("  y^2-x^3  ") == P("y^2 - x^3")


def test_canonical_printing_round_trip():
    rng = random.Random(30)
    for _ in range(40):
        terms = {}
        for _ in range(rng.randint(0, 6)):
            e = (rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 3))
            terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        f = MPoly(TXY, terms)
        assert P(str(f)) == f


# -- calculus -----------------------------------------------------------------

def test_partial_derivatives_of_cusp_family():
    f = P(CUSP_FAMILY)
    assert f.partial_derivative("t") == P("-2*t*x^2")
    assert f.partial_derivative("x") == P("-3*x^2 - 2*t^2*x")
    assert f.partial_derivative("y") == P("2*y")


def test_derivation_rules_random():
    rng = random.Random(31)
    for _ in range(30):
        def rand_poly():
            terms = {}
            for _ in range(rng.randint(0, 5)):
                e = (rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2))
                terms[e] = Fraction(rng.randint(-4, 4))
            return MPoly(TXY, terms)
        f, g = rand_poly(), rand_poly()
        v = rng.choice(TXY)
        assert (f + g).partial_derivative(v) == (
            f.partial_derivative(v) + g.partial_derivative(v))
        assert (f * g).partial_derivative(v) == (
            f.partial_derivative(v) * g + f * g.partial_derivative(v))


# -- substitution ----------------------------------------------------------------

def test_substitute_slice():
    f = P(CUSP_FAMILY)
    assert f.substitute({"t": 0}) == P("y^2 - x^3")


def test_substitute_identity():
    f = P(CUSP_FAMILY)
    assert f.substitute({}) == f
    assert f.substitute({"x": MPoly.variable(TXY, "x")}) == f


def test_substitute_polar_parametrization():
    df_dt = P(CUSP_FAMILY).partial_derivative("t")
    sub = df_dt.substitute({"x": P("-2/3*t^2"), "y": 0})
    assert sub == P("-8/9*t^5")
    assert sub.vanishing_order("t") == 5


# -- vanishing order ---------------------------------------------------------------

def test_vanishing_order_examples():
    assert P("-8/9*t^5").vanishing_order() == 5
    assert P("3").vanishing_order() == 0
    assert P("t + t^2").vanishing_order() == 1


def test_vanishing_order_zero_poly():
    with pytest.raises(InfiniteOrderError):
        P("0").vanishing_order()


def test_vanishing_order_needs_univariate():
    with pytest.raises(InputError):
        P("x + y").vanishing_order()


# -- series ---------------------------------------------------------------------------

def test_series_inverse():
    u = P("1 + t")
    inv = series_inverse(u, 5)
    assert (u * inv).truncate(5) == MPoly.constant(TXY, 1)
    with pytest.raises(InputError):
        series_inverse(P("t"), 4)


def test_series_inverse_bivariate_unit():
    u = P("2 + x + t^2")
    inv = series_inverse(u, 6)
    assert (u * inv).truncate(6) == MPoly.constant(TXY, 1)


# -- misc structure --------------------------------------------------------------------

def test_degrees_and_orders():
    f = P(CUSP_FAMILY)
    assert f.degree() == 4
    assert f.degree_in("x") == 3
    assert f.order() == 2
    assert MPoly.zero(TXY).degree() == -1


def test_coefficient_extraction():
    f = P(CUSP_FAMILY)
    assert f.coefficient_in("y", 2) == MPoly.constant(TXY, 1)
    assert f.coefficient_in("x", 2) == P("-t^2")
    assert f.coefficient_in("x", 0) == P("y^2")


def test_power_and_pow_errors():
    f = P("1 + x")
    assert f ** 3 == f * f * f
    assert f ** 0 == MPoly.constant(TXY, 1)
    with pytest.raises(InputError):
        f ** -1
