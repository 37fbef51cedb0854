"""Winding numbers, torus degrees, and the theorem equalities on examples."""

import random
from fractions import Fraction

import pytest

from coamoeba.chain_builder import Triangle, TriangleChain, homology_class
from coamoeba.errors import DimensionMismatch, PointOnBoundary
from coamoeba.degree_oracle import (
    ClosedPolygon2,
    TorusPoint2,
    boundary_polygons,
    class_oracle_2d,
    coamoeba_degree,
    cover_degree_triangles,
    cover_multiplicity_triangles,
    cycle_degree,
    evaluate_at_generic_point,
    pushed_zonotope_chain,
    random_generic_theta,
    sample_coamoeba,
    torus_degree_polygon,
    torus_degree_triangles,
    winding_number,
)
from coamoeba.gale_plane import aligned_vectors, d_b, push_class, pushforward_for, validate_bconfig
from coamoeba.line_model import line_from_bconfig, line_from_forms

RC = validate_bconfig([(1, 0), (-2, 1), (1, -2), (0, 1)])
PAR = validate_bconfig([(1, 0), (0, 1), (-2, -2), (1, 1)])
TRIANGLE = validate_bconfig([(1, 0), (0, 1), (-1, -1)])

SQUARE = ClosedPolygon2(((0, 0), (2, 0), (2, 2), (0, 2)))


class TestWinding:
    def test_square_inside(self):
        assert winding_number(SQUARE, (1, 1)) == 1

    def test_square_outside(self):
        assert winding_number(SQUARE, (3, 1)) == 0

    def test_doubled_square(self):
        doubled = ClosedPolygon2(SQUARE.vertices + SQUARE.vertices)
        assert winding_number(doubled, (1, 1)) == 2

    def test_clockwise_square(self):
        cw = ClosedPolygon2(tuple(reversed(SQUARE.vertices)))
        assert winding_number(cw, (1, 1)) == -1

    def test_point_on_edge(self):
        with pytest.raises(PointOnBoundary):
            winding_number(SQUARE, (1, 0))

    def test_point_on_vertex(self):
        with pytest.raises(PointOnBoundary):
            winding_number(SQUARE, (0, 0))

    def test_rational_point(self):
        assert winding_number(SQUARE, (Fraction(1, 7), Fraction(13, 7))) == 1

    def test_concatenated_loops_add(self):
        ccw = SQUARE.vertices
        cw = tuple(reversed(SQUARE.vertices))
        cancel = ClosedPolygon2(ccw + cw)
        assert winding_number(cancel, (1, Fraction(1, 3))) == 0
        reinforce = ClosedPolygon2(ccw + ccw + cw)
        assert winding_number(reinforce, (1, Fraction(1, 3))) == 1


class TestTorusDegrees:
    def test_fundamental_square_tile(self):
        tile = ClosedPolygon2(((-1, -1), (1, -1), (1, 1), (-1, 1)))
        theta = TorusPoint2.make(Fraction(1, 7), Fraction(2, 7))
        assert torus_degree_polygon(tile, theta) == 1

    def test_degenerate_polygon(self):
        flat = ClosedPolygon2(((0, 0), (1, 0), (0, 0), (-1, 0)))
        theta = TorusPoint2.make(Fraction(1, 7), Fraction(2, 7))
        assert torus_degree_polygon(flat, theta) == 0

    def test_translate_window_is_sufficient(self):
        # enlarging the lift search window must not change the degree
        big = ClosedPolygon2(((-3, -3), (3, -3), (3, 3), (-3, 3)))
        theta = TorusPoint2.make(Fraction(3, 11), Fraction(-5, 11))
        base = torus_degree_polygon(big, theta)
        manual = 0
        for kx in range(-4, 5):
            for ky in range(-4, 5):
                p = (theta.x + 2 * kx, theta.y + 2 * ky)
                manual += winding_number(big, p)
        assert base == manual == 9

    def test_empty_chain(self):
        chain = TriangleChain((), dim=2)
        assert torus_degree_triangles(chain, TorusPoint2.make(0, Fraction(1, 9))) == 0

    def test_dimension_check(self):
        chain = TriangleChain((Triangle((0, 0, 0), (1, 0, 0), (0, 1, 0)),), dim=3)
        with pytest.raises(DimensionMismatch):
            torus_degree_triangles(chain, TorusPoint2.make(0, Fraction(1, 9)))


class TestRationalCubic:
    line = line_from_bconfig(RC, pivot=4)

    def test_lightly_shaded_point_single_cover(self):
        theta = TorusPoint2.make(Fraction(-43, 77), Fraction(-3, 77))
        assert coamoeba_degree(self.line, RC, theta) == 1

    def test_dark_point_double_cover(self):
        theta = TorusPoint2.make(Fraction(6, 25), Fraction(1, 25))
        assert coamoeba_degree(self.line, RC, theta) == 2

    def test_outside_coamoeba(self):
        theta = TorusPoint2.make(Fraction(-28, 47), Fraction(3, 47))
        assert coamoeba_degree(self.line, RC, theta) == 0

    def test_cycle_degree_constant_three(self):
        rng = random.Random(2024)
        for _ in range(100):
            _, val = random_generic_theta(rng, lambda t: cycle_degree(self.line, RC, t))
            assert val == 3

    def test_coamoeba_multiplicities_realized(self):
        rng = random.Random(5)
        seen = set()
        for _ in range(200):
            _, val = random_generic_theta(rng, lambda t: coamoeba_degree(self.line, RC, t))
            seen.add(val)
        assert seen == {0, 1, 2}


class TestParallelPresentations:
    backtracking = line_from_bconfig(PAR, pivot=4)
    canonical = line_from_bconfig(PAR, pivot=3)

    def test_both_cycle_degrees_are_two(self):
        rng = random.Random(99)
        for line in (self.backtracking, self.canonical):
            for _ in range(25):
                _, val = random_generic_theta(rng, lambda t: cycle_degree(line, PAR, t))
                assert val == 2

    def test_backtracking_triple_covered_region(self):
        tris = pushed_zonotope_chain(self.backtracking, pushforward_for(self.backtracking, PAR))
        pt = (Fraction(6, 5), Fraction(19, 10))
        assert cover_multiplicity_triangles(tris, pt) == 3
        assert cover_degree_triangles(tris, pt) == 1
        assert torus_degree_triangles(tris, TorusPoint2.make(*pt)) == 2

    def test_canonical_single_cover_same_region(self):
        tris = pushed_zonotope_chain(self.canonical, pushforward_for(self.canonical, PAR))
        pt = (Fraction(6, 5), Fraction(19, 10))
        assert cover_multiplicity_triangles(tris, pt) == 1
        assert cover_degree_triangles(tris, pt) == 1

    def test_theorem_equalities(self):
        for line in (self.backtracking, self.canonical):
            pushed = push_class(homology_class(line), aligned_vectors(line, PAR))
            assert pushed == d_b(PAR) == 2


class TestClassOracle:
    def test_tc_pair_23(self):
        line = line_from_bconfig(RC, pivot=4)
        assert class_oracle_2d(line, 2, 3) == 1

    def test_tc_pair_12(self):
        line = line_from_bconfig(RC, pivot=4)
        assert class_oracle_2d(line, 1, 2) == 0

    def test_plane_fourth_case(self):
        line = line_from_forms([(-1, 0), (1, -1), (0, 1)])
        assert class_oracle_2d(line, 1, 2) == 1

    def test_plane_first_three_vanish(self):
        for forms in ([(1, 0), (1, -1), (0, 1)], [(1, 0), (-1, 1), (0, 1)],
                      [(-1, 0), (-1, 1), (0, 1)]):
            line = line_from_forms(forms)
            assert class_oracle_2d(line, 1, 2) == 0

    @pytest.mark.parametrize("pivot", [1, 2, 3, 4])
    def test_oracle_matches_formula_all_pairs(self, pivot):
        line = line_from_bconfig(RC, pivot=pivot)
        cls = homology_class(line)
        for i in range(1, line.n + 1):
            for j in range(i + 1, line.n + 1):
                assert class_oracle_2d(line, i, j) == cls.coeff.get((i, j), 0)

    def test_degenerate_projection_is_zero(self):
        # both coordinates constant: the projected line is a point
        line = line_from_forms([(1, 0), (1, -1), (0, -1), (0, 2), (0, 1)])
        cls = homology_class(line)
        assert class_oracle_2d(line, 3, 4) == cls.coeff.get((3, 4), 0) == 0


class TestSmallConfigs:
    def test_triangle_config_degree_one(self):
        line = line_from_bconfig(TRIANGLE, pivot=3)
        rng = random.Random(1)
        for _ in range(20):
            _, val = random_generic_theta(rng, lambda t: cycle_degree(line, TRIANGLE, t))
            assert val == 1

    def test_m1_line_degree_matches(self):
        cross = validate_bconfig([(1, 0), (-1, 0), (0, 1), (0, -1)])
        line = line_from_bconfig(cross, pivot=4)
        assert line.m == 1
        rng = random.Random(3)
        for _ in range(20):
            _, val = random_generic_theta(rng, lambda t: cycle_degree(line, cross, t))
            assert val == d_b(cross) == 1


class TestSampler:
    def test_deterministic(self):
        line = line_from_bconfig(RC, pivot=4)
        a = sample_coamoeba(line, RC, 64, seed=11)
        b = sample_coamoeba(line, RC, 64, seed=11)
        assert a == b

    def test_zero_count(self):
        line = line_from_bconfig(RC, pivot=4)
        report = sample_coamoeba(line, RC, 0, seed=11)
        assert report.points == () and report.ok

    def test_no_violations_small_run(self):
        line = line_from_bconfig(RC, pivot=4)
        report = sample_coamoeba(line, RC, 500, seed=7)
        assert report.ok
        assert report.eligible > 0
