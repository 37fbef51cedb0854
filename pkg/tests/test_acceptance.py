"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report.  Every equality below is exact (integers and Fractions); the only
tolerances are the stated wall-clock budgets and the sampler's fixed edge
tolerance.
"""

import contextlib
import random
import time
from fractions import Fraction
from pathlib import Path

from conftest import random_bconfig

from coamoeba.chain_builder import (
    homology_class,
    verify_cycle,
    zonotope_chain,
    zonotope_path,
)
from coamoeba.degree_oracle import (
    class_oracle_2d,
    cover_multiplicity_triangles,
    cycle_degree,
    pushed_zonotope_chain,
    random_generic_theta,
    sample_coamoeba,
)
from coamoeba.errors import InputError
from coamoeba.gale_plane import (
    aligned_vectors,
    d_b,
    det2,
    gale_dual,
    normalized_volume,
    push_class,
    pushforward_for,
    pushforward_path,
    validate_bconfig,
    zonotope_b,
)
from coamoeba.line_model import line_from_bconfig, line_from_forms
from coamoeba.render import RenderOptions, render_cover, render_torus

GOLDEN = Path(__file__).parent / "golden"
RC = validate_bconfig([(1, 0), (-2, 1), (1, -2), (0, 1)])
PAR = validate_bconfig([(1, 0), (0, 1), (-2, -2), (1, 1)])


@contextlib.contextmanager
def report(num: int, desc: str):
    try:
        yield
    except BaseException:
        print(f"[criterion {num}] FAIL - {desc}")
        raise
    print(f"[criterion {num}] PASS - {desc}")


def test_criterion_1_rational_cubic_end_to_end():
    with report(1, "rational cubic: d_B = 3 by chambers, dual volume, class, and 100 degrees"):
        start = time.time()
        line = line_from_bconfig(RC, pivot=4)

        assert d_b(RC) == 3

        dual = gale_dual(RC)
        assert sorted(dual.points) == [(0,), (1,), (2,), (3,)]
        assert normalized_volume(dual) == 3

        cls = homology_class(line)
        assert cls.coeff == {(2, 3): 1}
        assert push_class(cls, aligned_vectors(line, RC)) == 3

        rng = random.Random(1)
        for _ in range(100):
            _, val = random_generic_theta(rng, lambda t: cycle_degree(line, RC, t))
            assert val == 3

        assert time.time() - start < 1.0


def test_criterion_2_tc_vertices_and_class():
    with report(2, "tc line: coamoeba vertices and class e2^e3"):
        start = time.time()
        from coamoeba.chain_builder import coamoeba_vertices

        line = line_from_forms([(1, 0), (-2, 1), (1, -2), (0, 1)])
        skel = coamoeba_vertices(line)
        # (pi,0,pi), (0,0,pi), (0,-pi,pi), (0,-pi,0) as torus points
        assert skel.vertices == ((1, 0, 1), (0, 0, 1), (0, 1, 1), (0, 1, 0))
        assert homology_class(line).coeff == {(2, 3): 1}
        assert time.time() - start < 0.1


def test_criterion_3_table_rows():
    with report(3, "all four M=1 table rows: vertex pairs and path sequences"):
        rows = [
            ([(-1, 0), (-1, 0), (0, 1)],            # [-z : -z : 1]
             ((0, 0), (1, 1)),
             ((-1, -1), (0, 0), (1, 1), (0, 0))),
            ([(1, 0), (1, 0), (0, 1)],              # [z : z : 1]
             ((1, 1), (0, 0)),
             ((0, 0), (-1, -1), (0, 0), (1, 1))),
            ([(-1, 0), (0, 1), (0, 1)],             # [-z : 1 : 1]
             ((0, 0), (1, 0)),
             ((-1, 0), (0, 0), (1, 0), (0, 0))),
            ([(1, 0), (0, 1), (0, 1)],              # [z : 1 : 1]
             ((1, 0), (0, 0)),
             ((0, 0), (-1, 0), (0, 0), (1, 0))),
        ]
        from coamoeba.chain_builder import coamoeba_vertices

        for forms, vertices, path_listed in rows:
            line = line_from_forms(forms)
            skel = coamoeba_vertices(line)
            assert skel.vertices == vertices, forms
            path = zonotope_path(line)
            assert path.pprime == path.ptilde, forms
            assert tuple(reversed(path.ptilde)) == path_listed, forms


def test_criterion_4_plane_cycle_classes():
    with report(4, "four planar parametrizations give classes 0, 0, 0, 1 twice over"):
        cases = [
            ([(1, 0), (1, -1), (0, 1)], 0),         # [z : z-1 : 1]
            ([(1, 0), (-1, 1), (0, 1)], 0),         # [z : 1-z : 1]
            ([(-1, 0), (-1, 1), (0, 1)], 0),        # [-z : 1-z : 1]
            ([(-1, 0), (1, -1), (0, 1)], 1),        # [-z : z-1 : 1]
        ]
        for forms, expected in cases:
            line = line_from_forms(forms)
            formula = homology_class(line).coeff.get((1, 2), 0)
            oracle = class_oracle_2d(line, 1, 2)
            assert formula == oracle == expected, forms


def test_criterion_5_parallel_presentations():
    with report(5, "parallel pair: both presentations verify; canonical tiles, "
                   "backtracking covers a region near 0 thrice"):
        backtracking = line_from_bconfig(PAR, pivot=4)
        canonical = line_from_bconfig(PAR, pivot=3)
        invariant = d_b(PAR)
        assert invariant == 2

        rng = random.Random(2)
        for line in (backtracking, canonical):
            pushed = push_class(homology_class(line), aligned_vectors(line, PAR))
            assert pushed == 2
            for _ in range(40):
                _, val = random_generic_theta(rng, lambda t: cycle_degree(line, PAR, t))
                assert val == 2

        # canonical ordering tiles Z_B exactly once: orientations never flip
        # and the signed areas add up to the zonotope area, all exact
        image = pushed_zonotope_chain(canonical, pushforward_for(canonical, PAR))
        double_area = 0
        for t in image.triangles:
            d = t.coeff * det2(
                (t.b[0] - t.a[0], t.b[1] - t.a[1]),
                (t.c[0] - t.a[0], t.c[1] - t.a[1]),
            )
            assert d >= 0
            double_area += d
        assert Fraction(double_area, 2) == zonotope_b(PAR).area() == 7

        # the non-normalized ordering covers a neighborhood near the origin
        # three times (unsigned preimage count in the cover)
        spiky = pushed_zonotope_chain(backtracking, pushforward_for(backtracking, PAR))
        region = [
            (Fraction(6, 5), Fraction(19, 10)),
            (Fraction(5, 4), Fraction(39, 20)),
            (Fraction(23, 20), Fraction(37, 20)),
        ]
        for pt in region:
            assert cover_multiplicity_triangles(spiky, pt) == 3, pt
            assert cover_multiplicity_triangles(image, pt) == 1, pt


def test_criterion_6_random_property_sweep():
    with report(6, "200 random configurations (N <= 7): all exact invariants"):
        start = time.time()
        rng = random.Random(20240809)
        duals_checked = 0
        for trial in range(200):
            config = random_bconfig(rng)
            pivot = rng.randrange(1, len(config.vectors) + 1)
            line = line_from_bconfig(config, pivot=pivot)

            assert verify_cycle(line).ok, (trial, config)

            path = zonotope_path(line)
            assert path.ptilde[path.half] == tuple(-x for x in path.ptilde[0])

            cls = homology_class(line)
            for i in range(1, line.n + 1):
                for j in range(i + 1, line.n + 1):
                    assert class_oracle_2d(line, i, j) == cls.coeff.get((i, j), 0)

            invariant = d_b(config)  # raises ChamberMismatch if not constant
            assert push_class(cls, aligned_vectors(line, config)) == invariant

            for _ in range(3):
                _, val = random_generic_theta(
                    rng, lambda t: cycle_degree(line, config, t))
                assert val == invariant

            try:
                assert normalized_volume(gale_dual(config)) == invariant
                duals_checked += 1
            except InputError:
                pass
        elapsed = time.time() - start
        assert duals_checked > 50
        assert elapsed < 30.0, f"sweep took {elapsed:.1f}s"


def test_criterion_7_sampler_consistency():
    with report(7, "10^4 Horn-Kapranov samples on the cubic: no violations, deterministic"):
        line = line_from_bconfig(RC, pivot=4)
        first = sample_coamoeba(line, RC, 10_000, seed=20240809)
        assert first.ok, first.violations[:3]
        assert first.eligible + first.skipped == 10_000
        second = sample_coamoeba(line, RC, 10_000, seed=20240809)
        assert first == second


def test_criterion_8_render_goldens():
    with report(8, "render and cover are byte-identical and match the goldens"):
        line = line_from_bconfig(RC, pivot=4)
        opts = RenderOptions(resolution=48)
        svg_a = render_torus(line, RC, opts)
        svg_b = render_torus(line, RC, opts)
        assert svg_a == svg_b
        assert svg_a == (GOLDEN / "rational_cubic_torus_48.svg").read_text()

        backtracking = line_from_bconfig(PAR, pivot=4)
        image = pushforward_path(
            zonotope_path(backtracking), pushforward_for(backtracking, PAR))
        cov_a = render_cover(image)
        cov_b = render_cover(image)
        assert cov_a == cov_b
        assert cov_a == (GOLDEN / "parallel_cover.svg").read_text()
