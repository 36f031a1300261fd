"""Incidence geometry, group action, charts, regions, circles."""

import random
from fractions import Fraction

import pytest

from flagdyn import classification as cls
from flagdyn import flag_space as fs
from flagdyn import lie_core as lc
from flagdyn import models as md
from flagdyn.checks import (
    rand_flag,
    rand_frac,
    rand_group,
    rand_interior_flag,
    rand_lievec,
    rand_traceless,
    rand_upper,
)


class TestIncidence:
    def test_flag_requires_incidence(self):
        with pytest.raises(ValueError):
            fs.Flag(fs.ProjPoint.of((1, 0, 0)), fs.ProjLine.of((1, 0, 0)))

    def test_canonical_representatives(self):
        assert fs.ProjPoint.of((2, 4, 6)) == fs.ProjPoint.of((1, 2, 3))
        assert fs.ProjLine.of((-3, 0, 3)) == fs.ProjLine.of((1, 0, -1))

    def test_base_point_representable(self):
        assert fs.BASE_FLAG.point == fs.ProjPoint.of((1, 0, 0))


class TestAction:
    def test_incidence_preserved_in_bulk(self):
        rng = random.Random(41)
        for _ in range(10_000):
            g, x = rand_group(rng), rand_flag(rng)
            fs.act(g, x)  # the constructor asserts incidence exactly

    def test_identity(self):
        rng = random.Random(43)
        x = rand_flag(rng)
        assert fs.act(lc.GroupElem.identity(), x) == x

    def test_composition(self):
        rng = random.Random(47)
        for _ in range(200):
            g, h, x = rand_group(rng), rand_group(rng), rand_flag(rng)
            assert fs.act(g @ h, x) == fs.act(g, fs.act(h, x))

    def test_upper_triangular_fixes_base_flag(self):
        rng = random.Random(53)
        for _ in range(200):
            assert fs.act(rand_upper(rng), fs.BASE_FLAG) == fs.BASE_FLAG


class TestFlip:
    def test_value_at_base_flag(self):
        # orthogonal complements of span(e1, e2) and span(e1)
        assert fs.flip(fs.BASE_FLAG) == fs.Flag.of((0, 0, 1), (0, 1, 0))

    def test_involution(self):
        rng = random.Random(59)
        for _ in range(100):
            x = rand_flag(rng)
            assert fs.flip(fs.flip(x)) == x

    def test_equivariance(self):
        rng = random.Random(61)
        for _ in range(200):
            g, x = rand_group(rng), rand_flag(rng)
            assert fs.flip(fs.act(g, x)) == fs.act(lc.theta_group(g), fs.flip(x))

    def test_exchanges_circle_families(self):
        rng = random.Random(67)
        for _ in range(50):
            x = rand_flag(rng)
            fx = fs.flip(x)
            for (s, t) in ((1, 0), (0, 1), (1, 1), (2, -3), (5, 7)):
                # a point of the line pencil through x flips into the point
                # row of the flipped line
                y = fs.flip(fs.alpha_circle_flag(x, s, t))
                assert y.line == fx.line
                z = fs.flip(fs.beta_circle_flag(x, s, t))
                assert z.point == fx.point


class TestAffineChart:
    def test_base_values(self):
        assert fs.affine_chart(fs.O_A) == ((0, 0), (0, 1))
        assert fs.affine_chart(fs.O_T) == ((1, 0), (0, 1))

    def test_roundtrip(self):
        rng = random.Random(71)
        for _ in range(100):
            x = rand_interior_flag(rng, "a")
            point, direction = fs.affine_chart(x)
            assert fs.affine_chart_inverse(point, direction) == x

    def test_chart_coords_roundtrip(self):
        rng = random.Random(73)
        for _ in range(100):
            coords = tuple(rand_frac(rng) for _ in range(3))
            assert fs.chart_coords(fs.flag_from_coords(*coords)) == coords

    def test_boundary_rejection(self):
        with pytest.raises(fs.BoundaryError):
            fs.affine_chart(fs.Flag.of((0, 1, 0), (1, 0, 0)))
        # horizontal direction is outside the slope chart only
        horizontal = fs.affine_chart_inverse((2, 3), (1, 0))
        with pytest.raises(fs.BoundaryError):
            fs.chart_coords(horizontal)


class TestRegions:
    def test_model_anchors_are_interior(self):
        assert fs.region_classify(fs.O_T, "t") is fs.Region.INTERIOR
        assert fs.region_classify(fs.O_A, "a") is fs.Region.INTERIOR

    def test_degeneration_anchor_in_second_stratum(self):
        x = fs.Flag.of((0, 1, 0), (1, 0, 1))
        assert fs.region_classify(x, "t") is fs.Region.G2

    def test_base_flag_is_deep_boundary_for_affine_model(self):
        assert fs.region_classify(fs.BASE_FLAG, "a") is fs.Region.DEEP_BOUNDARY

    def test_first_strata_examples(self):
        # line through the special point, point neither special nor at
        # infinity
        x_t = fs.Flag.of((1, 0, 1), (1, 0, 0))   # line [e1, e3] passes [e3]
        assert fs.region_classify(x_t, "t") is fs.Region.G1
        x_a = fs.Flag.of((0, 0, 1), (1, 0, 0))   # line [e3, e1] passes [e1]
        assert fs.region_classify(x_a, "a") is fs.Region.G1

    def test_orbit_rank_three_iff_interior(self):
        rng = random.Random(79)
        for model, alg in (("t", cls.h_t()), ("a", cls.h_a())):
            for _ in range(150):
                x = rand_flag(rng)
                interior = fs.region_classify(x, model) is fs.Region.INTERIOR
                assert (fs.orbit_rank(alg.basis, x) == 3) == interior

    def test_unknown_model_rejected(self):
        with pytest.raises(ValueError):
            fs.region_classify(fs.O_T, "q")


class TestCircleBoundary:
    def test_beta_circle_of_block_anchor(self):
        res = fs.circle_boundary_points(fs.O_T, "beta", "t")
        assert not res.full_circle
        assert res.points == (fs.Flag.of((0, 1, 0), (1, 0, 1)),)

    def test_beta_circle_of_affine_anchor(self):
        res = fs.circle_boundary_points(fs.O_A, "beta", "a")
        assert not res.full_circle and len(res.points) == 1

    def test_full_containment_on_infinity_line(self):
        x = fs.Flag.of((1, 0, 0), (0, 1, 0))  # line at infinity
        assert fs.circle_boundary_points(x, "beta", "t").full_circle

    def test_exactly_one_for_interior_flags(self):
        rng = random.Random(83)
        for model in ("t", "a"):
            for _ in range(500):
                x = rand_interior_flag(rng, model)
                for which in ("alpha", "beta"):
                    res = fs.circle_boundary_points(x, which, model)
                    assert not res.full_circle
                    assert len(res.points) == 1
                    y = res.points[0]
                    assert fs.region_classify(y, model) is not fs.Region.INTERIOR


class TestFundamentalVector:
    def test_isotropy_kills_velocity(self):
        rng = random.Random(89)
        carry = lc.GroupElem([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        target = fs.act(carry, fs.BASE_FLAG)
        for _ in range(100):
            v = lc.LieVec.of([[rand_frac(rng) if j >= i else 0 for j in range(3)]
                              for i in range(3)])
            w = fs.fundamental_vector(lc.conjugate(carry, v), target)
            assert w == (0, 0, 0)

    def test_central_generator_velocity_at_affine_anchor(self):
        assert fs.fundamental_vector(md.HEIS_Z, fs.O_A) == (1, 0, 0)

    def test_finite_difference_agreement(self):
        rng = random.Random(97)

        def quotient_error(v, x, w, h):
            step = lc.GroupElem([
                [Fraction(int(i == j)) + h * v.entries[i][j] for j in range(3)]
                for i in range(3)])
            c0 = fs.chart_coords(x)
            c1 = fs.chart_coords(fs.act(step, x))
            diff = [(a - b) / h for a, b in zip(c1, c0)]
            return max(abs(float(d - ww)) for d, ww in zip(diff, w))

        for _ in range(30):
            v = rand_traceless(rng)
            x = rand_interior_flag(rng, "a")
            w = fs.fundamental_vector(v, x)
            e1 = quotient_error(v, x, w, Fraction(1, 10 ** 6))
            e2 = quotient_error(v, x, w, Fraction(1, 10 ** 7))
            assert e1 < 1e-2
            # first order in the step: a tenfold finer step shrinks the
            # error by close to ten
            assert e2 < e1 / 5 + 1e-12

    def test_chart_domain_violation(self):
        with pytest.raises(fs.BoundaryError):
            fs.fundamental_vector(md.HEIS_Z, fs.BASE_FLAG)


class TestTangentTransport:
    def test_killing_with_value_roundtrip(self):
        rng = random.Random(101)
        for _ in range(50):
            x = rand_interior_flag(rng, "a")
            w = tuple(rand_frac(rng) for _ in range(3))
            v = fs.killing_with_value(w, x)
            assert fs.fundamental_vector(v, x) == w

    def test_push_tangent_equivariance(self):
        rng = random.Random(103)
        for _ in range(30):
            x = rand_interior_flag(rng, "a")
            v = rand_traceless(rng)
            g = rand_upper(rng)
            y = fs.act(g, x)
            try:
                lhs = fs.push_tangent(g, x, fs.fundamental_vector(v, x))
                rhs = fs.fundamental_vector(lc.conjugate(g, v), y)
            except fs.BoundaryError:
                continue
            assert lhs == rhs
