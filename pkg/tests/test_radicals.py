"""Exact radical scalars: simplification, arithmetic, ordering."""

from fractions import Fraction

import pytest

from reinhardt_lab import Radical


class TestConstruction:
    def test_rational_passthrough(self):
        r = Radical(Fraction(3, 4))
        assert r.is_rational()
        assert r.as_fraction() == Fraction(3, 4)

    def test_perfect_power_simplifies(self):
        assert Radical.nth_root(Fraction(27), 3).as_fraction() == 3
        assert Radical.nth_root(Fraction(1, 4), 2).as_fraction() == Fraction(1, 2)

    def test_irrational_detected(self):
        r = Radical.nth_root(Fraction(2), 2)
        assert not r.is_rational()
        with pytest.raises(ValueError):
            r.as_fraction()

    def test_negative_base_rejected_zero_collapses(self):
        with pytest.raises(ValueError):
            Radical.nth_root(Fraction(-2), 2)
        z = Radical.nth_root(Fraction(0), 3)
        assert z.sign == 0 and not z


class TestArithmetic:
    def test_product_of_conjugate_roots(self):
        r = Radical.nth_root(Fraction(2), 2)
        assert (r * r).as_fraction() == 2

    def test_mixed_roots_merge(self):
        # 2^(1/2) * 2^(1/3) = 2^(5/6)
        a = Radical.nth_root(Fraction(2), 2)
        b = Radical.nth_root(Fraction(2), 3)
        c = a * b
        assert float(c) == pytest.approx(2 ** (5 / 6))

    def test_inverse(self):
        r = Radical.nth_root(Fraction(8), 3)  # = 2
        assert (r * r.inverse()).as_fraction() == 1
        s = Radical.nth_root(Fraction(3), 2)
        assert float(s * s.inverse()) == pytest.approx(1.0)

    def test_negative_sign_tracked(self):
        r = Radical(Fraction(-2))
        assert float(r) == -2
        assert float(r * r) == 4

    def test_float_agrees(self):
        r = Radical.nth_root(Fraction(5, 7), 4)
        assert float(r) == pytest.approx((5 / 7) ** 0.25)


class TestOrderingAndDisplay:
    def test_total_order(self):
        a = Radical.nth_root(Fraction(2), 2)
        b = Radical.nth_root(Fraction(3), 2)
        assert a < b
        assert Radical(Fraction(-1)) < a

    def test_str_is_stable(self):
        r = Radical.nth_root(Fraction(1, 2), 2)
        assert str(r) == "(1/2)^(1/2)"
        assert str(Radical(Fraction(3))) == "3"

    def test_equality_after_simplification(self):
        assert Radical.nth_root(Fraction(4), 2) == Radical(Fraction(2))
