"""Non-compact automorphism families: evaluation, invariance, orbits, limits."""

import cmath

import numpy as np
import pytest

import reinhardt_lab as rl


class TestTorusRotation:
    def test_preserves_membership(self, nonconvex):
        rot = rl.TorusRotation([0.3, 1.1, -2.0])
        pts = rl.sample_interior(nonconvex, 50, seed=1)
        for z in pts:
            w = rot(z)
            assert np.allclose([abs(a) for a in w], [abs(a) for a in z])
            assert nonconvex.contains(w).kind == "inside"


class TestMoebiusOnModel:
    def test_fixes_nothing_but_preserves_boundary(self, nonconvex):
        (F,) = rl.moebius_family(nonconvex, [0.5])
        pts = rl.sample_boundary(nonconvex, 100, seed=3)
        for z in pts:
            w = F(z)
            u = [abs(c) ** 2 for c in w]
            assert abs(float(nonconvex.Q.evaluate(u)) - 1.0) < 1e-9

    def test_interior_maps_inside(self, nonconvex):
        (F,) = rl.moebius_family(nonconvex, [0.73])
        rep = rl.invariance_check(nonconvex, F, samples=300, seed=5)
        assert rep.flip_fraction == 0.0
        assert rep.passed

    def test_origin_image(self, nonconvex):
        (F,) = rl.moebius_family(nonconvex, [0.5])
        w = F([0, 0, 0])
        assert w[0] == pytest.approx(-0.5)
        assert abs(w[1]) == 0 and abs(w[2]) == 0

    def test_conformal_relation_pointwise(self, nonconvex):
        # defining function transforms by the real factor (1-a^2)/|1-a z1|^2
        (F,) = rl.moebius_family(nonconvex, [0.4])
        rng = np.random.default_rng(8)
        for _ in range(40):
            z = rl.sample_interior(nonconvex, 1, seed=int(rng.integers(1 << 30)))[0]
            rho = float(nonconvex.Q.evaluate([abs(c) ** 2 for c in z])) - 1.0
            rho_f = float(nonconvex.Q.evaluate([abs(c) ** 2 for c in F(z)])) - 1.0
            factor = (1 - 0.4**2) / abs(1 - 0.4 * z[0]) ** 2
            assert rho_f == pytest.approx(factor * rho, rel=1e-9, abs=1e-12)

    def test_inverse_round_trip(self, nonconvex):
        (F,) = rl.moebius_family(nonconvex, [0.6])
        G = F.inverse()
        pts = rl.sample_interior(nonconvex, 60, seed=9)
        for z in pts:
            w = G(F(z))
            assert max(abs(a - b) for a, b in zip(w, z)) < 1e-12

    def test_group_law_on_first_coordinate(self, nonconvex):
        a, b = 0.3, 0.45
        c = (a + b) / (1 + a * b)
        Fa, Fb, Fc = rl.moebius_family(nonconvex, [a, b, c])
        pts = rl.sample_interior(nonconvex, 50, seed=12)
        for z in pts:
            lhs = Fa(Fb(z))
            rhs = Fc(z)
            assert max(abs(p - q) for p, q in zip(lhs, rhs)) < 1e-12

    def test_parameter_domain_enforced(self, nonconvex):
        with pytest.raises(rl.DomainError):
            rl.moebius_family(nonconvex, [1.0])

    def test_ball_family(self, ball3):
        (F,) = rl.moebius_family(ball3, [0.5])
        rep = rl.invariance_check(ball3, F, samples=200, seed=2)
        assert rep.passed


class TestOrbits:
    def test_orbit_converges_to_boundary_point(self, nonconvex):
        schedule = [-1 + 2.0**-i for i in range(1, 41)]
        maps = rl.moebius_family(nonconvex, schedule)
        rep = rl.orbit(nonconvex, maps, [0, 0, 0])
        assert rep.limit is not None
        err = max(abs(a - b) for a, b in zip(rep.limit, (1, 0, 0)))
        assert err < 1e-6
        assert rep.limit_on_boundary
        # every orbit point stays strictly inside
        assert all(d > 0 for d in rep.boundary_distances)

    def test_orbit_distances_shrink(self, nonconvex):
        schedule = [-1 + 2.0**-i for i in range(1, 21)]
        maps = rl.moebius_family(nonconvex, schedule)
        rep = rl.orbit(nonconvex, maps, [0, 0, 0])
        d = rep.boundary_distances
        assert all(d[i + 1] < d[i] for i in range(len(d) - 1))


class TestChannelFixture:
    def test_family_preserves_domain(self, channel):
        F = rl.InfiniteTypeAutomorphism(0.5)
        rep = rl.invariance_check(channel, F, samples=500, seed=0, box=3.0)
        assert rep.flip_fraction == 0.0
        assert rep.max_boundary_residual < 1e-8

    def test_orbit_accumulates_at_flat_point(self, channel):
        schedule = [-1 + 2.0**-i for i in range(1, 41)]
        maps = [rl.InfiniteTypeAutomorphism(a) for a in schedule]
        rep = rl.orbit(channel, maps, [0, 0])
        err = max(abs(a - b) for a, b in zip(rep.limit, (1, 0)))
        assert err < 1e-6

    def test_inverse(self, channel):
        F = rl.InfiniteTypeAutomorphism(0.7)
        G = F.inverse()
        z = (0.2 + 0.1j, 0.3 - 0.2j)
        w = G(F(z))
        assert max(abs(a - b) for a, b in zip(w, z)) < 1e-12


class TestAccumulation:
    def test_model_accumulation_is_first_block_sphere(self, nonconvex):
        acc = rl.accumulation_set(nonconvex)
        assert acc.dimension == 1  # 2*n1 - 1 with n1 = 1
        assert acc.contains((1, 0, 0))
        assert acc.contains((cmath.exp(0.7j), 0, 0))
        assert not acc.contains((1, 0.2, 0))

    def test_ball_accumulation_is_whole_sphere(self, ball3):
        acc = rl.accumulation_set(ball3)
        assert acc.dimension == 5  # 2n - 1
        v = np.array([0.3, 0.5, 0.2]) + 1j * np.array([0.1, -0.4, 0.6])
        v = v / np.linalg.norm(v)
        assert acc.contains(tuple(v))

    def test_channel_accumulation_is_circle(self, channel):
        acc = rl.accumulation_set(channel)
        assert acc.dimension == 1
        assert acc.contains((cmath.exp(1.3j), 0))
        assert not acc.contains((1, 0.5))
