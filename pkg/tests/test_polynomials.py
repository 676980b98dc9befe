"""Exact Laurent-polynomial layer: parsing, ring laws, calculus, substitution."""

from fractions import Fraction

import numpy as np
import pytest

import reinhardt_lab as rl
from reinhardt_lab import ModuliPolynomial, MonomialMap, WeightVector, parse_polynomial


def poly(text, n):
    return parse_polynomial(text, num_vars=n)


class TestParsing:
    def test_round_trip(self):
        p = poly("u2^2 - u2*u3 + u3^2 + u1", 3)
        assert parse_polynomial(str(p), num_vars=3) == p

    def test_rational_coefficients(self):
        p = poly("1/2*u1 + 3*u2", 2)
        assert p.terms[(1, 0)] == Fraction(1, 2)
        assert p.terms[(0, 1)] == 3

    def test_negative_exponents_parse(self):
        p = poly("u1^-2 + u1", 1)
        assert p.terms[(-2,)] == 1
        assert not p.is_ordinary()

    def test_rejects_garbage(self):
        with pytest.raises(rl.SpecSyntaxError):
            poly("u1 + import os", 1)
        with pytest.raises(rl.SpecSyntaxError):
            poly("u1 ** u1", 1)

    def test_zero_terms_dropped(self):
        p = poly("u1 - u1", 1)
        assert p.is_zero()
        assert p.terms == {}


class TestRingLaws:
    def test_add_commutes(self):
        a = poly("u1 + 2*u2", 2)
        b = poly("u2^3 - u1", 2)
        assert a + b == b + a

    def test_mul_distributes(self):
        a = poly("u1 + u2", 2)
        b = poly("u1 - u2", 2)
        c = poly("u1*u2", 2)
        assert a * (b + c) == a * b + a * c

    def test_difference_of_squares(self):
        a = poly("u1 + u2", 2)
        b = poly("u1 - u2", 2)
        assert a * b == poly("u1^2 - u2^2", 2)

    def test_scalar_ops(self):
        a = poly("u1", 1)
        assert 2 * a - a == a
        assert (a - a).is_zero()

    def test_constant_helpers(self):
        c = ModuliPolynomial.constant(2, Fraction(5, 3))
        assert c.is_constant()
        assert c.constant_term() == Fraction(5, 3)
        assert ModuliPolynomial.zero(2).is_zero()


class TestEvaluation:
    def test_exact_rational_evaluation(self):
        p = poly("u1^2 - 1/3*u2", 2)
        v = p.evaluate([Fraction(1, 2), Fraction(3)])
        assert v == Fraction(1, 4) - 1
        assert isinstance(v, Fraction)

    def test_float_evaluation(self):
        p = poly("u1^2 + u2", 2)
        assert p.evaluate([0.5, 0.25]) == pytest.approx(0.5)

    def test_batch_matches_scalar(self):
        p = poly("u1^3 - 2*u1*u2 + u2^2", 2)
        pts = np.random.default_rng(0).uniform(0.1, 2.0, size=(64, 2))
        batch = p.evaluate_batch(pts)
        singles = np.array([p.evaluate(row) for row in pts])
        assert np.allclose(batch, singles, rtol=1e-12, atol=0)

    def test_laurent_needs_positive_point(self):
        p = poly("u1^-1", 1)
        assert p.evaluate([Fraction(1, 4)]) == 4


class TestGradient:
    def test_gradient_exact(self):
        p = poly("u1^2*u2 + u2^3", 2)
        g = p.gradient()
        assert g[0] == poly("2*u1*u2", 2)
        assert g[1] == poly("u1^2 + 3*u2^2", 2)

    def test_gradient_finite_difference_oracle(self):
        # central differences at a handful of random points
        p = poly("u1^3 - 2*u1*u2^2 + 1/2*u2^4 + u1", 2)
        g = p.gradient()
        rng = np.random.default_rng(7)
        h = 1e-6
        for _ in range(10):
            x = rng.uniform(0.2, 1.5, size=2)
            for j in range(2):
                xp = x.copy()
                xm = x.copy()
                xp[j] += h
                xm[j] -= h
                fd = (p.evaluate(xp) - p.evaluate(xm)) / (2 * h)
                assert fd == pytest.approx(float(g[j].evaluate(x)), rel=1e-6, abs=1e-7)


class TestSubstitution:
    def test_dilation_scales_coefficients(self):
        p = poly("u1^2 + u2", 2)
        mm = MonomialMap.dilation([Fraction(1, 2), Fraction(3)])
        q = p.substitute(mm)
        assert q == poly("1/4*u1^2 + 3*u2", 2)

    def test_permutation_relabels(self):
        p = poly("u1 + 2*u2^3", 2)
        mm = MonomialMap.permutation([1, 0])
        assert p.substitute(mm) == poly("u2 + 2*u1^3", 2)

    def test_substitute_evaluate_commute(self):
        # (Q o F)(u) == Q(F(u)) for exact rational input
        p = poly("u1^2 - u1*u2 + 3*u2", 2)
        mm = MonomialMap([Fraction(2), Fraction(1, 3)], [[0, 1], [1, 0]])
        u = [Fraction(3, 7), Fraction(5, 2)]
        direct = p.substitute(mm).evaluate(u)
        via_map = p.evaluate(mm.apply_moduli(u))
        assert direct == via_map

    def test_compose_is_substitution_chain(self):
        p = poly("u1*u2 + u2^2", 2)
        f = MonomialMap.dilation([Fraction(2), Fraction(5)])
        g = MonomialMap.permutation([1, 0])
        lhs = p.substitute(f.compose(g))
        rhs = p.substitute(f).substitute(g)
        assert lhs == rhs

    def test_inverse_round_trip(self):
        mm = MonomialMap([Fraction(3), Fraction(1, 2)], [[1, 1], [0, 1]])
        p = poly("u1^2*u2 - 4*u2", 2)
        assert p.substitute(mm).substitute(mm.inverse()) == p

    def test_unimodularity_enforced(self):
        with pytest.raises(ValueError):
            MonomialMap([1, 1], [[2, 0], [0, 1]])
        with pytest.raises(ValueError):
            MonomialMap([0, 1], [[1, 0], [0, 1]])


class TestRestrictionCompression:
    def test_restrict_zeroes_coordinates(self):
        p = poly("u1*u2 + u3^2 + u1", 3)
        r = p.restrict([1])
        assert r == poly("u3^2 + u1", 3)

    def test_restrict_laurent_raises(self):
        p = poly("u1^-1 + u2", 2)
        with pytest.raises(ValueError):
            p.restrict([0])

    def test_compress_drops_unused(self):
        p = poly("u1 + u3^2", 3)
        c = p.compress([0, 2])
        assert c.num_vars == 2
        assert c == poly("u1 + u2^2", 2)


class TestWeightedHomogeneity:
    def test_decompose_splits_exactly(self):
        p = poly("u1 + u2^2 + u1*u2", 2)
        w = WeightVector([Fraction(1), Fraction(1, 2)])
        lead, rest = p.weighted_decompose(w)
        assert lead + rest == p
        assert lead == poly("u1 + u2^2", 2)
        assert lead.is_weighted_homogeneous(w)
        assert not p.is_weighted_homogeneous(w)

    def test_scaling_identity_small(self):
        # weighted parts satisfy P(s^{D w_j} u_j) == s^{D deg} P(u) exactly
        p = poly("u1^2 + u2^3 - u1*u2", 2)
        w = WeightVector([Fraction(1, 2), Fraction(1, 3)])
        lead, _ = p.weighted_decompose(w)
        D = 6
        s = Fraction(2)
        u = [Fraction(3, 5), Fraction(7, 4)]
        scaled = [s ** (D * wj) * uj for wj, uj in zip(w.weights, u)]
        assert lead.evaluate(scaled) == s**D * lead.evaluate(u)
