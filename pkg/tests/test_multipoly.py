"""Parser and exact arithmetic for sparse multivariate polynomials."""

import random
from fractions import Fraction

import pytest

from meropencil import (
    ExpressionError,
    MultiPoly,
    VariableMismatchError,
    parse_expression,
    translate,
    try_divide,
)

XZ = ("x", "z")
XZT = ("x", "z", "t")


def P(text, variables=XZ):
    return parse_expression(text, variables)


def random_poly(rng, variables=XZ, max_terms=6, max_exp=4, height=100):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = tuple(rng.randint(0, max_exp) for _ in variables)
        num = rng.randint(-height, height)
        den = rng.randint(1, height)
        terms[e] = terms.get(e, Fraction(0)) + Fraction(num, den)
    return MultiPoly(variables, terms)


def random_point(rng, variables=XZ, height=30):
    return {v: Fraction(rng.randint(-height, height), rng.randint(1, 7))
            for v in variables}


class TestParse:
    def test_three_term_family(self):
        p = parse_expression("x*(z^2+x) - t*z^3", XZT)
        assert p.terms == {
            (1, 2, 0): Fraction(1),
            (2, 0, 0): Fraction(1),
            (0, 3, 1): Fraction(-1),
        }

    def test_zero(self):
        assert P("0").is_zero()

    def test_binomial_identity(self):
        assert P("(x+z)^2 - x^2 - 2*x*z") == P("z^2")

    def test_rational_literals(self):
        assert P("1/2*x + 3") == MultiPoly(XZ, {(1, 0): Fraction(1, 2), (0, 0): 3})

    def test_unary_minus_head_and_paren(self):
        assert P("-x + z") == P("z") - P("x")
        assert P("x*(-z + x)") == P("x^2 - x*z")

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ExpressionError) as err:
            P("2x")
        assert err.value.position == 1

    def test_unknown_identifier(self):
        with pytest.raises(ExpressionError, match="unknown identifier 'y'"):
            P("x + y")

    def test_negative_exponent(self):
        with pytest.raises(ExpressionError, match="exponent"):
            P("x^-2")

    def test_fractional_exponent(self):
        with pytest.raises(ExpressionError, match="exponent"):
            P("x^(1/2)")

    def test_zero_denominator(self):
        with pytest.raises(ExpressionError, match="denominator"):
            P("3/0")

    def test_top_level_slash_rejected(self):
        with pytest.raises(ExpressionError):
            P("x/2")

    def test_str_round_trip(self):
        rng = random.Random(7)
        for _ in range(60):
            p = random_poly(rng)
            assert parse_expression(str(p), XZ) == p


class TestArith:
    def test_additive_inverse(self):
        assert (P("x") + P("-x")).is_zero()

    def test_difference_of_squares(self):
        assert P("x+z") * P("x-z") == P("x^2 - z^2")

    def test_binomial_cube(self):
        one = ("x",)
        p = parse_expression("x+1", one)
        assert p**3 == parse_expression("x^3 + 3*x^2 + 3*x + 1", one)

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatchError):
            P("x") + parse_expression("x", ("x", "y"))

    def test_ring_axioms_random(self):
        rng = random.Random(20240901)
        for _ in range(120):
            a, b, c = (random_poly(rng) for _ in range(3))
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)

    def test_evaluation_homomorphism(self):
        rng = random.Random(5150)
        for _ in range(100):
            a, b = random_poly(rng), random_poly(rng)
            pt = random_point(rng)
            assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
            assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)


class TestDerivative:
    def test_power_rule(self):
        assert P("x^2*z").diff("x") == P("2*x*z")

    def test_constant_in_z(self):
        assert P("x^2").diff("z").is_zero()

    def test_family_partial(self):
        p = parse_expression("x*z^2 + x^2 - t*z^3", XZT)
        assert p.diff("x") == parse_expression("z^2 + 2*x", XZT)

    def test_against_divided_difference(self):
        # P(x+h) - P(x) - h*dP/dx must be divisible by h^2, exactly
        rng = random.Random(99)
        vs = ("x", "z", "h")
        h = MultiPoly.variable(vs, "h")
        xh = MultiPoly.variable(vs, "x") + h
        for _ in range(25):
            p = random_poly(rng, vs, max_terms=5, max_exp=3)
            shifted = p.substitute({"x": xh}).with_variables(vs)
            delta = shifted - p - h * p.diff("x")
            assert delta.is_zero() or try_divide(delta, h * h) is not None

    def test_linearity_and_leibniz(self):
        rng = random.Random(321)
        for _ in range(60):
            a, b = random_poly(rng), random_poly(rng)
            assert (a + b).diff("x") == a.diff("x") + b.diff("x")
            assert (a * b).diff("z") == a.diff("z") * b + a * b.diff("z")

    def test_unknown_variable(self):
        with pytest.raises(VariableMismatchError):
            P("x").diff("w")


class TestSubstitute:
    def test_specialize_parameter(self):
        fam = parse_expression("x*z^2 + x^2 - t*z^3", XZT)
        assert fam.substitute({"t": 0}) == P("x*z^2 + x^2")

    def test_identity(self):
        p = P("x^2 - z")
        assert p.substitute({"x": MultiPoly.variable(XZ, "x")}) == p

    def test_root_substitution(self):
        p = P("x^2 + z")
        minus_x2 = -P("x^2")
        assert p.substitute({"z": minus_x2}).is_zero()

    def test_new_variables_appear(self):
        p = P("x + z")
        s = parse_expression("u + 1", ("u",))
        out = p.substitute({"x": s})
        assert set(out.variables) == {"z", "u"}

    def test_binding_unknown_variable(self):
        with pytest.raises(VariableMismatchError):
            P("x").substitute({"w": 1})

    def test_translate_round_trip(self):
        rng = random.Random(17)
        for _ in range(25):
            p = random_poly(rng)
            pt = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
            back = translate(translate(p, pt), (-pt[0], -pt[1]))
            assert back == p

    def test_translate_moves_value(self):
        p = P("x^2 + z - 3")
        pt = (Fraction(2), Fraction(-1))
        assert translate(p, pt).constant_term() == p.evaluate({"x": 2, "z": -1})
