import random
from math import comb

import pytest

from waringlab.binform import BinaryForm, monomial
from waringlab.exactlin import LinearSubspace, QQ, Matrix, rank
from waringlab.rankengine import rank_profile
from waringlab.curves import (
    DegenerateDraw,
    INFINITY,
    ParamCurve,
    construct_qSA,
    curve_point,
    format_curve,
    gap_curve,
    moment_to_form,
    parse_curve,
    project_curve,
    project_points,
    random_curve,
    rational_normal_curve,
)


class TestCurvePoint:
    def test_moment_coordinates(self):
        c = rational_normal_curve(4)
        assert curve_point(c, 3) == (1, 3, 9, 27, 81)
        assert curve_point(c, QQ(1, 2)) == (1, QQ(1, 2), QQ(1, 4), QQ(1, 8),
                                            QQ(1, 16))

    def test_point_at_infinity(self):
        c = rational_normal_curve(4)
        assert curve_point(c, INFINITY) == (0, 0, 0, 0, 1)

    def test_gap_curve_point(self):
        c = gap_curve(4)  # exponents 0,1,2,3,5
        assert curve_point(c, 2) == (1, 2, 4, 8, 32)
        assert curve_point(c, INFINITY) == (0, 0, 0, 0, 1)

    def test_base_point_rejected(self):
        c = ParamCurve([monomial(2, 0), monomial(2, 1)])  # x^2, xy
        with pytest.raises(ValueError):
            curve_point(c, INFINITY)  # both components vanish at (0:1)

    def test_degenerate_components_rejected(self):
        with pytest.raises(ValueError):
            ParamCurve([monomial(2, 0), monomial(2, 0), monomial(2, 2)])


class TestMomentToForm:
    def test_powers_land_on_curve(self):
        c = rational_normal_curve(6)
        for t in (0, 1, -2, QQ(3, 2), INFINITY):
            f = moment_to_form(curve_point(c, t), 6)
            assert rank_profile(f).rank == 1

    def test_off_curve_point(self):
        f = moment_to_form((0, 1, 0, 0, 0), 4)  # x^3 y up to scale
        assert rank_profile(f).rank == 4


class TestConstructQSA:
    def test_rational_normal_curve(self):
        c = rational_normal_curve(4)
        res = construct_qSA(c, (0, 1, 2), (3, 4, INFINITY))
        assert res.span_s.dim == 2 and res.span_a.dim == 2
        f = moment_to_form(res.q, 4)
        p = rank_profile(f)
        assert (p.border_rank, p.rank) == (3, 3)

    def test_gap_curve(self):
        c = gap_curve(4)
        res = construct_qSA(c, (1, 2, 3), (-1, -2, 5))
        assert res.span_s.intersect(res.span_a) == LinearSubspace.point(
            list(res.q))

    def test_overlapping_parameters_rejected(self):
        c = rational_normal_curve(4)
        with pytest.raises(ValueError):
            construct_qSA(c, (0, 1, 2), (2, 3, 4))

    def test_odd_ambient_rejected(self):
        c = rational_normal_curve(5)
        with pytest.raises(ValueError):
            construct_qSA(c, (0, 1, 2), (3, 4, 5))

    def test_wrong_sample_size_rejected(self):
        c = rational_normal_curve(4)
        with pytest.raises(ValueError):
            construct_qSA(c, (0, 1), (2, 3))


class TestProjection:
    def test_rnc_projects_to_rnc(self):
        c = rational_normal_curve(5)
        img = project_curve(c, 2)
        assert img.r == 4 and img.degree == 4
        # the image of a degree-e curve point stays on the image curve
        o = curve_point(c, 2)
        for t in (0, 1, -1, QQ(1, 3), INFINITY):
            p = project_points([curve_point(c, t)], o)[0]
            span = LinearSubspace(5, [list(p)])
            # parameter matching: the projected curve at t hits the same point
            q = curve_point(img, t)
            assert span.contains(list(q))

    def test_projection_from_infinity(self):
        c = rational_normal_curve(4)
        img = project_curve(c, INFINITY)
        assert img.r == 3 and img.degree == 3

    def test_nondegeneracy_preserved(self):
        rng = random.Random(7)
        c = random_curve(5, seed=rng)
        img = project_curve(c, 1)
        assert rank(Matrix([list(f.coeffs) for f in img.components])) == img.r + 1

    def test_project_points_span_drop(self):
        pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        inside = (1, 1, 0)  # in the span of the first two
        img = project_points(pts, inside)
        assert rank(Matrix([list(p) for p in img])) == 2
        outsideish = project_points(pts[:2], (0, 0, 1))
        assert rank(Matrix([list(p) for p in outsideish])) == 2

    def test_cannot_project_point_from_itself(self):
        with pytest.raises(ValueError):
            project_points([(1, 2, 3)], (2, 4, 6))

    def test_two_step_projection_bookkeeping(self):
        c = rational_normal_curve(6)
        once = project_curve(c, 0)
        twice = project_curve(once, 1)
        assert (once.r, once.degree) == (5, 5)
        assert (twice.r, twice.degree) == (4, 4)


class TestCurveEncoding:
    def test_round_trip(self):
        for c in (rational_normal_curve(4), gap_curve(3),
                  random_curve(4, seed=5)):
            again = parse_curve(format_curve(c))
            assert again.r == c.r and again.degree == c.degree
            assert all(a.coeffs == b.coeffs
                       for a, b in zip(again.components, c.components))

    def test_bad_header(self):
        with pytest.raises(ValueError):
            parse_curve("4\n1 0 0 0 0\n")

    def test_wrong_component_count(self):
        with pytest.raises(ValueError):
            parse_curve("2 2\n1 0 0\n0 1 0\n")
