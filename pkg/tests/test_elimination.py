"""Resultants, multivariate gcd, square-free parts, rational roots."""

import random
from fractions import Fraction
from itertools import permutations

import pytest

from meropencil import (
    InputError,
    MultiPoly,
    UniPoly,
    normalized,
    parse_expression,
    poly_gcd,
    rational_roots,
    resultant,
    squarefree_part,
    try_divide,
)

XZ = ("x", "z")
XY = ("x", "y")


def P(text, variables=XZ):
    return parse_expression(text, variables)


def sylvester_resultant(p, q, var):
    """Independent oracle: determinant of the Sylvester matrix, expanded by
    the Leibniz formula (only usable for small degrees)."""
    a = p.coefficients_in(var)
    b = q.coefficients_in(var)
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = MultiPoly.zero(p.variables)
    rows = []
    for i in range(n):  # rows of coefficients of p
        row = [zero] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    det = MultiPoly.zero(p.variables)
    for perm in permutations(range(size)):
        sign = 1
        seen = list(perm)
        # count inversions for the permutation sign
        inv = sum(1 for i in range(size) for j in range(i + 1, size)
                  if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        term = MultiPoly.constant(p.variables, sign)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero():
                break
        det = det + term
    return det


class TestResultant:
    def test_linear_divisor(self):
        assert resultant(P("x^2 + z"), P("x + 1"), "x") == P("z + 1")

    def test_two_linear(self):
        vs = ("x", "a", "b")
        r = resultant(parse_expression("x - a", vs), parse_expression("x - b", vs), "x")
        assert r in (parse_expression("a - b", vs), parse_expression("b - a", vs))
        assert r == parse_expression("a - b", vs)  # exact Sylvester sign

    def test_common_factor_gives_zero(self):
        assert resultant(P("x*z"), P("x*(z+1)"), "x").is_zero()

    def test_constant_cases(self):
        assert resultant(P("z"), P("x^2 + 1"), "x") == P("z^2")
        with pytest.raises(InputError):
            resultant(P("z"), P("z + 1"), "x")

    def test_against_sylvester_oracle(self):
        rng = random.Random(4242)
        checked = 0
        while checked < 30:
            a = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(2, 4))]
            b = [Fraction(rng.randint(-4, 4)) for _ in range(rng.randint(2, 4))]
            za = [Fraction(rng.randint(0, 2)) for _ in a]
            zb = [Fraction(rng.randint(0, 2)) for _ in b]
            p = MultiPoly(XZ, {(i, int(za[i])): c for i, c in enumerate(a) if c})
            q = MultiPoly(XZ, {(i, int(zb[i])): c for i, c in enumerate(b) if c})
            if p.degree_in("x") < 1 or q.degree_in("x") < 1:
                continue
            assert resultant(p, q, "x") == sylvester_resultant(p, q, "x")
            checked += 1

    def test_vanishes_iff_shared_specialized_root(self):
        # p = x^2 - z, q = x - 2 share an x-root exactly over z = 4
        r = resultant(P("x^2 - z"), P("x - 2"), "x")
        assert r.evaluate({"x": 0, "z": 4}) == 0
        assert r.evaluate({"x": 0, "z": 5}) != 0
        # and a constructed double point: common root at (x, z) = (1, 1)
        p = P("x - z")
        q = P("x^2 + z^2 - 2")
        r = resultant(p, q, "x")
        assert r.evaluate({"x": 0, "z": 1}) == 0


class TestGcd:
    def test_monomial_times_unit(self):
        g = poly_gcd(P("x^2*z^3*(z^2 + 2*x)"), P("z^3"))
        assert g == P("z^3")

    def test_gcd_with_zero(self):
        p = P("2*x + 4*z")
        assert poly_gcd(p, MultiPoly.zero(XZ)) == P("x + 2*z")

    def test_coprime(self):
        assert poly_gcd(P("x + 1"), P("z + 1")) == 1

    def test_common_factor_random(self):
        rng = random.Random(31)
        for _ in range(25):
            a = P(f"x + {rng.randint(1, 9)}*z")
            b = P(f"x^2 + {rng.randint(1, 9)}")
            c = P(f"{rng.randint(1, 5)}*x*z + z^2 + {rng.randint(1, 3)}")
            g = poly_gcd(a * c, b * c)
            assert try_divide(g, normalized(c)) is not None
            assert try_divide(a * c, g) is not None
            assert try_divide(b * c, g) is not None

    def test_normalization(self):
        g = poly_gcd(P("-2*x^2 - 2*x*z"), P("-4*x"))
        assert g == P("x")
        # integer primitive, positive grlex leading coefficient
        n = normalized(P("-1/2*x^2 + 3/4*z"))
        assert n == P("2*x^2 - 3*z")


class TestSquarefree:
    def test_strip_square(self):
        assert squarefree_part(P("x^2*(z^2 + x)")) == P("x*z^2 + x^2")

    def test_already_squarefree(self):
        assert squarefree_part(P("x*z - 1")) == P("x*z - 1")

    def test_perfect_power(self):
        assert squarefree_part(P("(x + z)^3")) == P("x + z")

    def test_idempotent_random(self):
        rng = random.Random(11)
        for _ in range(20):
            p = P(f"x + {rng.randint(1, 6)}*z + {rng.randint(1, 6)}")
            q = P(f"x*z + {rng.randint(1, 6)}")
            if not poly_gcd(p, q).is_constant():
                continue
            assert squarefree_part(p * p * q) == squarefree_part(p * q)

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            squarefree_part(MultiPoly.zero(XZ))


class TestRationalRoots:
    def test_obvious_factorization(self):
        u = UniPoly("t", [0, -1, 0, 1])  # t^3 - t
        rr = rational_roots(u)
        assert rr.roots == {Fraction(-1), Fraction(0), Fraction(1)}
        assert rr.quotient.degree() == 0

    def test_irreducible_quadratic(self):
        u = UniPoly("t", [1, 0, 1])  # t^2 + 1
        rr = rational_roots(u)
        assert rr.roots == frozenset()
        assert rr.quotient == UniPoly("t", [1, 0, 1])

    def test_linear(self):
        rr = rational_roots(UniPoly("t", [-1, 2]))  # 2t - 1
        assert rr.roots == {Fraction(1, 2)}

    def test_constructed_roots_recovered(self):
        rng = random.Random(2024)
        for _ in range(20):
            roots = {Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                     for _ in range(rng.randint(1, 4))}
            u = UniPoly("t", [1])
            for r in roots:
                u = _mul(u, UniPoly("t", [-r.numerator, r.denominator]))
            u = _mul(u, UniPoly("t", [1, 0, 1]))  # irrational padding
            rr = rational_roots(u)
            assert rr.roots == roots
            for r in rr.roots:
                assert u(r) == 0

    def test_zero_rejected(self):
        with pytest.raises(InputError):
            rational_roots(UniPoly("t", []))


def _mul(a: UniPoly, b: UniPoly) -> UniPoly:
    out = [Fraction(0)] * (len(a.coefficients) + len(b.coefficients) - 1)
    for i, ca in enumerate(a.coefficients):
        for j, cb in enumerate(b.coefficients):
            out[i + j] += ca * cb
    return UniPoly(a.variable, out)
