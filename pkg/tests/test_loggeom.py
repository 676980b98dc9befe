"""Logarithmic-image tools: sampling, incidence, algebraic symmetry search."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

import reinhardt_lab as rl


def permuted_terms(Q, sigma):
    """Independent re-implementation: permute variables of an exact polynomial.

    sigma maps old index -> new index; term exponents move with it.
    """
    out = {}
    for exps, coeff in Q.terms.items():
        new = [0] * len(exps)
        for old, e in enumerate(exps):
            new[sigma[old]] = e
        out[tuple(new)] = out.get(tuple(new), Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


class TestLogImage:
    def test_points_are_logs_of_interior_moduli(self, nonconvex):
        rep = rl.log_image_sample(nonconvex, count=200, seed=9)
        assert rep.accepted == len(rep.points) > 0
        pts = np.asarray(rep.points, dtype=float)
        assert np.all(np.isfinite(pts))
        assert np.all(pts < 0.0)  # rescaled into the unit polydisk
        # undo the rescale: u = exp(2x) * sup, must land strictly inside
        sup = np.asarray(rep.rescale)
        for x in pts[:50]:
            u = np.exp(2.0 * x) * sup
            assert float(nonconvex.Q.evaluate(u)) < 1.0

    def test_deterministic(self, nonconvex):
        a = rl.log_image_sample(nonconvex, count=64, seed=2)
        b = rl.log_image_sample(nonconvex, count=64, seed=2)
        assert np.array_equal(np.asarray(a.points), np.asarray(b.points))


class TestHyperplaneIncidence:
    def test_model_meets_every_axis(self, nonconvex):
        inc = rl.hyperplane_incidence(nonconvex)
        assert sorted(inc.meets) == [0, 1, 2]
        assert inc.avoids == ()

    def test_shell_avoids_axis_with_exact_distance(self):
        # {(u1 - 2)^2 < 1} keeps |z1| between 1 and sqrt(3)
        inc = rl.hyperplane_incidence(rl.builtin("shell"))
        assert inc.avoids == (0,)
        assert inc.distances[0] == 1.0

    def test_ball_meets_all(self, ball3):
        inc = rl.hyperplane_incidence(ball3)
        assert sorted(inc.meets) == [0, 1, 2]


class TestExactSymmetry:
    def test_swap_last_two_is_symmetry(self, nonconvex):
        mm = rl.MonomialMap.permutation([0, 2, 1])
        assert rl.is_exact_symmetry(nonconvex, mm)

    def test_swap_first_two_is_not(self, nonconvex):
        mm = rl.MonomialMap.permutation([1, 0, 2])
        assert not rl.is_exact_symmetry(nonconvex, mm)

    def test_scaling_is_not_symmetry(self, nonconvex):
        mm = rl.MonomialMap.dilation([Fraction(1, 2), 1, 1])
        assert not rl.is_exact_symmetry(nonconvex, mm)


class TestEnumeration:
    def test_model_group_matches_permutation_oracle(self, nonconvex):
        rep = rl.enumerate_algebraic_symmetries(nonconvex, entry_bound=2)
        found = {(m.matrix, m.scalars) for m in rep.maps}

        # oracle: check all 6 permutations of the variables independently
        oracle = set()
        terms = dict(nonconvex.Q.terms)
        for sigma in itertools.permutations(range(3)):
            if permuted_terms(nonconvex.Q, list(sigma)) == terms:
                mat = tuple(
                    tuple(1 if j == sigma[i] else 0 for j in range(3)) for i in range(3)
                )
                oracle.add((mat, (Fraction(1),) * 3))
        assert oracle <= found
        assert len(found) == 2  # nothing beyond identity and the swap

    def test_single_variable_plus_square_is_rigid(self):
        spec = rl.DomainSpec(n=2, Q=rl.parse_polynomial("u1 + u2^2", num_vars=2))
        rep = rl.enumerate_algebraic_symmetries(spec, entry_bound=2, assume_bounded=True)
        assert len(rep.maps) == 1
        only = rep.maps[0]
        assert only.matrix == ((1, 0), (0, 1))
        assert only.scalars == (Fraction(1), Fraction(1))

    def test_ball_group_is_full_permutation_group(self, ball3):
        rep = rl.enumerate_algebraic_symmetries(ball3, entry_bound=1)
        assert len(rep.maps) == 6
        for m in rep.maps:
            assert m.is_permutation_with_scaling()

    def test_every_map_preserves_membership_numerically(self, nonconvex):
        rep = rl.enumerate_algebraic_symmetries(nonconvex, entry_bound=2)
        pts = rl.sample_interior(nonconvex, 250, seed=13)
        for m in rep.maps:
            for z in pts:
                u = [abs(c) ** 2 for c in z]
                v = m.apply_moduli(u)
                assert float(nonconvex.Q.evaluate(v)) < 1.0
