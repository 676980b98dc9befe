"""Boundary geometry: Levi form, exact contact order, numeric estimation, probing."""

import math
from fractions import Fraction

import numpy as np
import pytest

import reinhardt_lab as rl
from reinhardt_lab import AnalyticCurve, ComplexRational


class TestComplexRational:
    def test_arithmetic(self):
        a = ComplexRational(Fraction(1, 2), Fraction(1, 3))
        b = ComplexRational(Fraction(2), Fraction(-1))
        assert (a + b).re == Fraction(5, 2)
        assert (a * b).im == Fraction(1, 6)  # (1/2)(-1) + (1/3)(2) = 1/6
        assert a.conjugate().im == Fraction(-1, 3)
        assert b.modulus_squared() == 5

    def test_from_value(self):
        assert ComplexRational.from_value(3).re == 3
        assert ComplexRational.from_value(Fraction(1, 7)).re == Fraction(1, 7)
        assert ComplexRational.from_value((1, 2)).im == 2
        assert ComplexRational.from_value(2 + 1j) == ComplexRational(Fraction(2), Fraction(1))

    def test_inexact_float_rejected(self):
        with pytest.raises(TypeError):
            ComplexRational.from_value(0.3)

    def test_str(self):
        assert str(ComplexRational(Fraction(1), Fraction(2))) == "1 + 2*i"
        assert str(ComplexRational(Fraction(1), Fraction(0))) == "1"


class TestLeviForm:
    def test_strictly_pseudoconvex_ball(self, ball3):
        rep = rl.levi_form(ball3, [1, 0, 0])
        assert rep.verdict == "positive_definite"
        assert all(e > 0 for e in rep.eigenvalues)

    def test_fixture_indefinite_point(self, nonconvex):
        q = (2**-0.5, 0.0, 2**-0.25)
        rep = rl.levi_form(nonconvex, q)
        assert rep.verdict == "indefinite"
        assert rep.eigenvalues[0] == pytest.approx(-1 / math.sqrt(2), abs=1e-9)
        assert rep.eigenvalues[1] == pytest.approx(4 * math.sqrt(2), abs=1e-9)

    def test_flat_direction_semidefinite(self, nonconvex):
        rep = rl.levi_form(nonconvex, [1, 0, 0])
        assert rep.verdict == "positive_semidefinite"
        assert max(abs(e) for e in rep.eigenvalues) < 1e-12

    def test_tangent_basis_annihilates_gradient(self, nonconvex):
        q = (2**-0.5, 0.0, 2**-0.25)
        rep = rl.levi_form(nonconvex, q)
        g = np.asarray(rep.gradient)
        for b in np.asarray(rep.tangent_basis):
            assert abs(np.dot(b, g)) < 1e-9

    def test_off_boundary_rejected(self, nonconvex):
        with pytest.raises(rl.DomainError):
            rl.levi_form(nonconvex, [0.1, 0.1, 0.1])

    def test_channel_flat_point_degenerate(self, channel):
        rep = rl.levi_form(channel, [1, 0])
        assert rep.verdict in ("positive_semidefinite", "zero")
        assert max(abs(e) for e in rep.eigenvalues) < 1e-12


class TestExactContactOrder:
    def test_linear_curve_against_ball(self, ball3):
        # gamma(t) = (1, t, 0): rho = |t|^2, order 2
        curve = AnalyticCurve((1, 0, 0), [{}, {1: 1}, {}])
        rep = rl.contact_order(ball3, curve)
        assert not rep.infinite
        assert rep.order == 2

    def test_fixture_weighted_tangency(self, nonconvex):
        # gamma(t) = (1, t, t): rho = |t|^4 + cross terms of degree 4
        curve = AnalyticCurve((1, 0, 0), [{}, {1: 1}, {1: 1}])
        rep = rl.contact_order(nonconvex, curve)
        assert rep.order == 4

    def test_base_must_be_on_boundary(self, ball3):
        with pytest.raises(rl.DomainError):
            rl.contact_order(ball3, AnalyticCurve((0, 0, 0), [{}, {1: 1}, {}]))

    def test_channel_infinite_with_certificate(self, channel):
        curve = AnalyticCurve((1, 0), [{}, {1: 1}])
        rep = rl.contact_order(channel, curve)
        assert rep.infinite
        assert rep.order == math.inf
        assert "vanishes identically" in rep.certificate
        assert "(1, (1)*t)" in rep.certificate

    def test_reparametrization_invariance(self, ball3):
        # gamma(t) = (1, t^3, 0): raw vanishing 6, curve order 3, ratio 2
        curve = AnalyticCurve((1, 0, 0), [{}, {3: 1}, {}])
        rep = rl.contact_order(ball3, curve)
        assert rep.boundary_vanishing == 6
        assert rep.curve_vanishing == 3
        assert rep.order == 2

    def test_exact_rational_coefficients(self, nonconvex):
        curve = AnalyticCurve(
            (1, 0, 0),
            [{}, {1: ComplexRational(Fraction(1, 2), Fraction(1, 2))}, {}],
        )
        rep = rl.contact_order(nonconvex, curve)
        assert rep.order == 4  # |c t|^4 term: first block sees nothing linear


class TestNumericContactOrder:
    def test_matches_exact_on_ball(self, ball3):
        curve = AnalyticCurve((1, 0, 0), [{}, {1: 1}, {}])
        num = rl.contact_order_numeric(ball3, curve)
        assert num.order_estimate == 2

    def test_matches_exact_on_fixture(self, nonconvex):
        curve = AnalyticCurve((1, 0, 0), [{}, {1: 1}, {1: 1}])
        num = rl.contact_order_numeric(nonconvex, curve)
        assert num.order_estimate == 4
        assert num.residual < 0.05

    def test_flat_curve_hits_floor(self, channel):
        curve = AnalyticCurve((1, 0), [{}, {1: 1}])
        num = rl.contact_order_numeric(channel, curve)
        assert num.order_estimate is None
        assert "floor" in num.note


class TestTypeProbe:
    def test_ball_point_has_order_two(self, ball3):
        rep = rl.type_probe(ball3, (1, 0, 0), degree=1, random_curves=5)
        assert rep.order == 2
        assert not rep.infinite

    def test_fixture_weak_point_order_four(self, nonconvex):
        rep = rl.type_probe(nonconvex, (1, 0, 0), degree=2, random_curves=5)
        assert rep.order == 4

    def test_channel_certifies_infinite(self, channel):
        rep = rl.type_probe(channel, (1, 0), degree=1, random_curves=0)
        assert rep.infinite
        assert rep.order == math.inf
        assert rep.certificate is not None

    def test_base_point_must_be_exact(self, nonconvex):
        with pytest.raises(TypeError):
            rl.type_probe(nonconvex, (0.9999, 0, 0), degree=1)
