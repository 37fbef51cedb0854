"""Structural invariants under randomized and property-based inputs."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_bconfig, random_line_forms

from coamoeba.chain_builder import (
    EdgeChain,
    block_vectors,
    coamoeba_vertices,
    homology_class,
    verify_cycle,
    zonotope_path,
)
from coamoeba.degree_oracle import ClosedPolygon2, winding_number
from coamoeba.errors import PointOnBoundary
from coamoeba.line_model import line_from_bconfig, line_from_forms


coords = st.integers(min_value=-3, max_value=3)
unit = st.integers(min_value=-1, max_value=1)


@given(st.tuples(coords, coords), st.tuples(unit, unit, unit), st.integers(1, 5))
def test_edge_chain_reversal_cancels(base3, disp, coeff):
    base = (base3[0], base3[1], 0)
    if all(x == 0 for x in disp):
        return
    chain = EdgeChain()
    chain.add(base, disp, coeff)
    flipped = tuple((b + d) % 2 for b, d in zip(base, disp))
    chain.add(flipped, tuple(-x for x in disp), coeff)
    assert chain.is_zero()


@given(st.lists(st.tuples(st.tuples(coords, coords, coords), st.tuples(unit, unit, unit),
                          st.integers(-3, 3)), max_size=12))
def test_edge_chain_is_abelian(atoms):
    forward = EdgeChain()
    backward = EdgeChain()
    for base, disp, coeff in atoms:
        forward.add(base, disp, coeff)
    for base, disp, coeff in reversed(atoms):
        backward.add(base, disp, coeff)
    assert forward == backward


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_random_lines_close_and_stay_canonical(rnd):
    rng = random.Random(rnd.randrange(2**32))
    forms = random_line_forms(rng)
    line = line_from_forms(forms)
    # idempotence of the canonical ordering
    again = line_from_forms(line.forms)
    assert again.forms == line.forms and again.blocks == line.blocks
    # shorter-first on finite mixed blocks
    for blk in line.blocks[:-1]:
        if not blk.mixed:
            continue
        first = [line.forms[p] for p in range(blk.m - 1, blk.n - 1)]
        second = [line.forms[p] for p in range(blk.n - 1, blk.m_next - 1)]
        sq = lambda fs: (sum(f.alpha for f in fs) ** 2 + sum(f.beta for f in fs) ** 2)
        assert sq(first) <= sq(second)
    # boundary cancellation
    assert verify_cycle(line).ok


def test_h_identity_random_sweep():
    rng = random.Random(42)
    for _ in range(120):
        line = line_from_forms(random_line_forms(rng))
        fs, gs, hs = block_vectors(line)
        for blk, f, g, h in zip(line.blocks, fs, gs, hs):
            s = line.signs[blk.m - 1]
            assert h == tuple(s * (2 * gj - fj) for gj, fj in zip(g, f))
        assert tuple(sum(v[i] for v in fs) for i in range(line.n)) == (0,) * line.n


def test_path_lifts_project_to_vertices():
    rng = random.Random(43)
    for _ in range(120):
        line = line_from_forms(random_line_forms(rng))
        path = zonotope_path(line)
        skel = coamoeba_vertices(line)
        half = path.half
        assert path.ptilde[half] == tuple(-x for x in path.ptilde[0])
        for j, (pt, pp) in enumerate(zip(path.ptilde, path.pprime)):
            assert tuple(x % 2 for x in pt) == skel.vertices[j % half]
            assert tuple(x % 2 for x in pp) == skel.vertices[j % half]


def test_class_coefficients_are_zero_or_one():
    rng = random.Random(44)
    for _ in range(150):
        line = line_from_forms(random_line_forms(rng))
        assert set(homology_class(line).coeff.values()) <= {1}


def test_chart_shift_invariance_random():
    rng = random.Random(45)
    for _ in range(60):
        config = random_bconfig(rng, max_n=5)
        pivot = rng.randrange(1, len(config.vectors) + 1)
        shift = Fraction(rng.randrange(-12, 13), rng.randrange(1, 9))
        base = line_from_bconfig(config, pivot=pivot)
        moved = line_from_bconfig(config, pivot=pivot, x_shift=shift)
        assert moved.perm == base.perm
        assert moved.signs == base.signs
        assert [(b.m, b.m_next, b.n) for b in moved.blocks] == \
            [(b.m, b.m_next, b.n) for b in base.blocks]


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=8),
       st.tuples(st.fractions(), st.fractions()))
@settings(max_examples=80)
def test_winding_additivity_of_doubling(verts, pt):
    poly = ClosedPolygon2(tuple(verts))
    doubled = ClosedPolygon2(tuple(verts) + tuple(verts))
    try:
        w = winding_number(poly, pt)
    except PointOnBoundary:
        return
    assert winding_number(doubled, pt) == 2 * w
