"""Milnor numbers, intersection multiplicities, Hessian corank, ADE labels."""

import random
from fractions import Fraction

import pytest

from meropencil import (
    INFINITE,
    MultiPoly,
    NonIsolatedError,
    NonzeroLinearPartError,
    NotVanishingError,
    UniPoly,
    classify_plane_germ,
    hessian_corank,
    intersection_multiplicity,
    milnor_number,
    parse_expression,
    resultant,
)

XZ = ("x", "z")


def P(text):
    return parse_expression(text, XZ)


def shear(p, c):
    x = MultiPoly.variable(XZ, "x")
    z = MultiPoly.variable(XZ, "z")
    return p.substitute({"x": x + c * z}).with_variables(XZ)


class TestMilnor:
    def test_morse_point(self):
        assert milnor_number(P("x^2 + z^2")).mu == 1

    def test_cusp_family_special_member(self):
        res = milnor_number(P("x^2 + x*z^2"))
        assert res.mu == 3
        assert len(res.basis_monomials) == 3

    def test_d5_germ(self):
        assert milnor_number(P("x*z^2 - x^4 + x^2*z^2")).mu == 5

    def test_brieskorn_oracle(self):
        # independent oracle: the Jacobian quotient of x^u + z^v has the
        # explicit monomial basis {x^i z^j : i <= u-2, j <= v-2}
        for u in range(2, 7):
            for v in range(2, 7):
                germ = P(f"x^{u} + z^{v}")
                expected_basis = {(i, j) for i in range(u - 1) for j in range(v - 1)}
                res = milnor_number(germ)
                assert res.mu == (u - 1) * (v - 1) == len(expected_basis)
                assert set(res.basis_monomials) == expected_basis

    def test_smooth_random(self):
        rng = random.Random(88)
        for _ in range(20):
            lin = P("x") * rng.randint(1, 5) + P("z") * rng.randint(1, 5)
            junk = P("x^2") * rng.randint(-3, 3) + P("x*z^2") * rng.randint(-3, 3)
            assert milnor_number(lin + junk).mu == 0

    def test_nakayama_certificate(self):
        res = milnor_number(P("x^3 + z^4"))
        assert res.mu == 6
        assert res.stabilization_degree >= 1

    def test_cap_monotonicity(self):
        for text in ("x^2 + x*z^2", "x*z^2 - x^4 + x^2*z^2", "x^3 + z^5"):
            a = milnor_number(P(text), cap=16)
            b = milnor_number(P(text), cap=24)
            assert a.mu == b.mu

    def test_non_isolated_detected(self):
        with pytest.raises(NonIsolatedError):
            milnor_number(P("x^2"), cap=8)

    def test_zero_germ_rejected(self):
        with pytest.raises(NonIsolatedError):
            milnor_number(MultiPoly.zero(XZ), cap=6)

    def test_not_vanishing(self):
        with pytest.raises(NotVanishingError):
            milnor_number(P("x + 1"))

    def test_three_variables(self):
        g = parse_expression("x^2 + y^2 + z^2", ("x", "y", "z"))
        assert milnor_number(g).mu == 1
        g = parse_expression("x^3 + y^3 + z^3", ("x", "y", "z"))
        assert milnor_number(g).mu == 8


class TestIntersection:
    def test_transverse_lines(self):
        assert intersection_multiplicity(P("x"), P("z")) == 1

    def test_polar_against_special_fiber(self):
        # substituting x = -z^2/2 into x*z^2 + x^2 leaves -z^4/4: order 4
        assert intersection_multiplicity(P("z^2 + 2*x"), P("x*z^2 + x^2")) == 4

    def test_resultant_order_oracle(self):
        # for u monic-linear in x, i(u, v) = order in z of Res_x(u, v)
        cases = [
            ("z^2 + 2*x", "x*z^2 + x^2"),
            ("x - z^2", "x^2 - z^5"),
            ("x - z^3", "x*z + z^3"),
            ("x + z", "x^2 + z^3"),
        ]
        for utext, vtext in cases:
            u, v = P(utext), P(vtext)
            r = resultant(u, v, "x")
            order = min(e[1] for e in r.terms)
            assert intersection_multiplicity(u, v) == order

    def test_shared_component_infinite(self):
        assert intersection_multiplicity(P("x"), P("x*z")) == INFINITE

    def test_both_zero_infinite(self):
        zero = MultiPoly.zero(XZ)
        assert intersection_multiplicity(zero, zero) == INFINITE

    def test_symmetry_random(self):
        rng = random.Random(345)
        done = 0
        while done < 50:
            u = P(f"{rng.randint(1, 3)}*x^{rng.randint(1, 3)}"
                  f" + {rng.randint(1, 3)}*z^{rng.randint(1, 3)}")
            v = P(f"x^{rng.randint(1, 2)}*z + {rng.randint(-3, 3)}*z^{rng.randint(1, 3)}"
                  f" + {rng.randint(1, 3)}*x^{rng.randint(2, 3)}")
            a = intersection_multiplicity(u, v, cap=24)
            if a == INFINITE:
                continue
            assert a == intersection_multiplicity(v, u, cap=24)
            done += 1

    def test_not_vanishing(self):
        with pytest.raises(NotVanishingError):
            intersection_multiplicity(P("x + 1"), P("z"))


class TestCorank:
    def test_nondegenerate(self):
        assert hessian_corank(P("x^2 + z^2")) == 0

    def test_rank_one(self):
        assert hessian_corank(P("x^2 + x*z^2")) == 1

    def test_degenerate(self):
        assert hessian_corank(P("x*z^2 - x^4")) == 2

    def test_nonzero_linear_part(self):
        with pytest.raises(NonzeroLinearPartError):
            hessian_corank(P("x + x^2"))


class TestClassifier:
    def test_family_generic_member(self):
        cls = classify_plane_germ(P("x*z^2 + x^2 - z^3"))
        assert cls.label == "A_2" and cls.mu == 2

    def test_family_special_member(self):
        cls = classify_plane_germ(P("x*z^2 + x^2"))
        assert cls.label == "A_3" and cls.mu == 3

    def test_d5(self):
        cls = classify_plane_germ(P("x*z^2 - x^4 + x^2*z^2"))
        assert cls.label == "D_5" and (cls.mu, cls.corank) == (5, 2)

    def test_smooth(self):
        assert classify_plane_germ(P("x + z^2")).label == "Smooth"

    def test_a_series_normal_forms(self):
        for k in range(1, 9):
            cls = classify_plane_germ(P(f"x^2 + z^{k + 1}"))
            assert cls.label == f"A_{k}"
            assert cls.mu == k and cls.corank <= 1

    def test_d_series_normal_forms(self):
        for k in range(4, 9):
            cls = classify_plane_germ(P(f"x*(z^2 + x^{k - 2})"))
            assert cls.label == f"D_{k}"
            assert cls.mu == k and cls.corank == 2

    def test_e_series_normal_forms(self):
        for text, label in (("x^3 + z^4", "E_6"),
                            ("x*(x^2 + z^3)", "E_7"),
                            ("x^3 + z^5", "E_8")):
            cls = classify_plane_germ(P(text))
            assert cls.label == label

    def test_beyond_ade(self):
        cls = classify_plane_germ(P("x^3 + x*z^4"))  # mu = 10, not ADE
        assert cls.label == "Unclassified" and cls.mu == 10

    def test_label_invariants(self):
        germs = ["x^2 + z^2", "x^2 + z^5", "x*z^2 + x^2", "x*(z^2 + x^3)",
                 "x^3 + z^4", "x*z^2 - x^4 + x^2*z^2"]
        for text in germs:
            cls = classify_plane_germ(P(text))
            if cls.kind == "A":
                assert cls.corank <= 1
            elif cls.kind in ("D", "E"):
                assert cls.corank == 2

    def test_coordinate_invariance(self):
        rng = random.Random(777)
        germs = [P("x^2 + x*z^2"), P("x*z^2 - x^4 + x^2*z^2"), P("x^3 + z^4")]
        for g in germs:
            base = milnor_number(g).mu
            for _ in range(3):
                c = rng.randint(1, 4)
                assert milnor_number(shear(g, c)).mu == base

    def test_intersection_shear_invariance(self):
        u, v = P("z^2 + 2*x"), P("x*z^2 + x^2")
        base = intersection_multiplicity(u, v)
        for c in (1, 2, 3):
            assert intersection_multiplicity(shear(u, c), shear(v, c)) == base
