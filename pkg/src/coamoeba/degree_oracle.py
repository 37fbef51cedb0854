"""Exact covering-degree oracles on the 2-torus, plus a float sampler.

Degrees are computed as winding numbers of explicit lattice polygons with
rational query points; genericity is enforced per query by exact
on-boundary tests, never by epsilon tolerances.  The only floating point
in this module is the Monte-Carlo sampler at the bottom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .chain_builder import TriangleChain, vadd, vneg, vsub, zonotope_chain, zonotope_path
from .errors import DimensionMismatch, PointOnBoundary
from .gale_plane import BConfig, Pushforward, aligned_vectors, pushforward_chain, pushforward_for
from .line_model import AffineLine

Num = Union[int, Fraction]
Point2 = tuple[Num, Num]


@dataclass(frozen=True)
class TorusPoint2:
    """Rational point of T^2 in pi-units, reduced to [-1, 1)^2."""

    x: Fraction
    y: Fraction

    @staticmethod
    def make(x, y) -> "TorusPoint2":
        rx = (Fraction(x) + 1) % 2 - 1
        ry = (Fraction(y) + 1) % 2 - 1
        return TorusPoint2(rx, ry)

    def as_tuple(self) -> Point2:
        return (self.x, self.y)


@dataclass(frozen=True)
class ClosedPolygon2:
    """Vertex list with implied closing edge; may self-intersect."""

    vertices: tuple[Point2, ...]

    def edges(self):
        verts = self.vertices
        return zip(verts, verts[1:] + verts[:1])

    def bounding_box(self):
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)


def _scaled_ints(poly: ClosedPolygon2, pt: Point2):
    """Common-denominator rescale of polygon and point to integers."""
    den = 1
    for v in poly.vertices:
        for c in v:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    for c in pt:
        f = Fraction(c)
        den = den * f.denominator // gcd(den, f.denominator)
    verts = [(int(v[0] * den), int(v[1] * den)) for v in poly.vertices]
    p = (int(Fraction(pt[0]) * den), int(Fraction(pt[1]) * den))
    return verts, p


def winding_number(poly: ClosedPolygon2, pt: Sequence[Num]) -> int:
    """Signed crossing count of the closed polygon around the point."""
    verts, (px, py) = _scaled_ints(poly, (pt[0], pt[1]))
    w = 0
    for a, b in zip(verts, verts[1:] + verts[:1]):
        if a == b:
            continue
        cross = (b[0] - a[0]) * (py - a[1]) - (px - a[0]) * (b[1] - a[1])
        if cross == 0:
            if (min(a[0], b[0]) <= px <= max(a[0], b[0])
                    and min(a[1], b[1]) <= py <= max(a[1], b[1])):
                raise PointOnBoundary(f"point {pt} lies on edge {a}-{b}")
            continue
        if a[1] <= py < b[1] and cross > 0:
            w += 1
        elif b[1] <= py < a[1] and cross < 0:
            w -= 1
    return w


def _translates(theta: TorusPoint2, box) -> list[Point2]:
    """All lifts theta + 2k landing in the closed bounding box."""
    minx, maxx, miny, maxy = box
    out = []
    kx_lo = -((theta.x - minx) // 2)
    kx_hi = (maxx - theta.x) // 2
    ky_lo = -((theta.y - miny) // 2)
    ky_hi = (maxy - theta.y) // 2
    kx = kx_lo
    while kx <= kx_hi:
        ky = ky_lo
        while ky <= ky_hi:
            out.append((theta.x + 2 * kx, theta.y + 2 * ky))
            ky += 1
        kx += 1
    return out


def torus_degree_polygon(poly: ClosedPolygon2, theta: TorusPoint2) -> int:
    """Sum of winding numbers over all torus lifts of the query point."""
    if not poly.vertices:
        return 0
    total = 0
    box = poly.bounding_box()
    for p in _translates(theta, box):
        total += winding_number(poly, p)
    return total


def _triangle_polygon(t) -> ClosedPolygon2:
    return ClosedPolygon2((t.a, t.b, t.c))


def torus_degree_triangles(chain: TriangleChain, theta: TorusPoint2) -> int:
    """Signed multiplicity of a planar triangle chain at a torus point."""
    if chain.dim != 2:
        raise DimensionMismatch(f"need a planar chain, got dimension {chain.dim}")
    total = 0
    for t in chain.triangles:
        poly = _triangle_polygon(t)
        total += t.coeff * torus_degree_polygon(poly, theta)
    return total


def cover_degree_triangles(chain: TriangleChain, pt: Sequence[Num]) -> int:
    """Signed multiplicity in the universal cover (single lift)."""
    if chain.dim != 2:
        raise DimensionMismatch(f"need a planar chain, got dimension {chain.dim}")
    return sum(t.coeff * winding_number(_triangle_polygon(t), pt)
               for t in chain.triangles)


def cover_multiplicity_triangles(chain: TriangleChain, pt: Sequence[Num]) -> int:
    """Unsigned preimage count in the universal cover: each triangle that
    contains the point counts once regardless of orientation."""
    if chain.dim != 2:
        raise DimensionMismatch(f"need a planar chain, got dimension {chain.dim}")
    return sum(abs(t.coeff * winding_number(_triangle_polygon(t), pt))
               for t in chain.triangles)


# ----------------------------------------------------------------------
# the coamoeba's boundary loops and the assembled degree queries


def _first_lift(line: AffineLine):
    return tuple(0 if s > 0 else 1 for s in line.signs[:line.n])


def boundary_polygons(line: AffineLine, push: Pushforward):
    """The two boundary loops of the planar coamoeba image, both started
    at the same integer lift of the first vertex: the upper membrane's
    loop steps by -pi*c_j, the lower one by +pi*c_j."""
    from .chain_builder import block_vectors

    fs, _, _ = block_vectors(line)
    start = push.apply(_first_lift(line))
    cs = [push.apply(f) for f in fs]
    upper = [start]
    lower = [start]
    for c in cs[:-1]:
        upper.append(vsub(upper[-1], c))
        lower.append(vadd(lower[-1], c))
    assert vsub(upper[-1], cs[-1]) == upper[0], "upper loop must close"
    assert vadd(lower[-1], cs[-1]) == lower[0], "lower loop must close"
    return ClosedPolygon2(tuple(upper)), ClosedPolygon2(tuple(lower))


def coamoeba_degree(line: AffineLine, config: BConfig, theta: TorusPoint2) -> int:
    """Multiplicity of the pushed coamoeba chain at a generic torus point:
    the sum of the two loops' torus winding numbers."""
    upper, lower = boundary_polygons(line, pushforward_for(line, config))
    return torus_degree_polygon(upper, theta) + torus_degree_polygon(lower, theta)


def pushed_zonotope_chain(line: AffineLine, push: Pushforward) -> TriangleChain:
    return pushforward_chain(zonotope_chain(zonotope_path(line)), push)


def cycle_degree(line: AffineLine, config: BConfig, theta: TorusPoint2) -> int:
    """Local degree of the full cycle (coamoeba chain + zonotope chain)
    pushed to T^2; constant and equal to the chamber invariant."""
    push = pushforward_for(line, config)
    upper, lower = boundary_polygons(line, push)
    return (torus_degree_polygon(upper, theta)
            + torus_degree_polygon(lower, theta)
            + torus_degree_triangles(pushed_zonotope_chain(line, push), theta))


def _projection_push(line: AffineLine, i: int, j: int) -> Pushforward:
    cols = tuple(
        (1 if k == i else 0, 1 if k == j else 0) for k in range(1, line.n + 1)
    )
    return Pushforward(cols)


def class_oracle_2d(line: AffineLine, i: int, j: int) -> int:
    """Degree of the cycle pushed through the coordinate projection onto
    the (i, j)-plane, evaluated at a generic point.  Equals the homology
    class coefficient at (i, j); vanishes when the projection collapses."""
    if not 1 <= i < j <= line.n:
        raise DimensionMismatch(f"need 1 <= i < j <= {line.n}, got {(i, j)}")
    push = _projection_push(line, i, j)
    upper, lower = boundary_polygons(line, push)
    tris = pushed_zonotope_chain(line, push)

    def query(theta: TorusPoint2) -> int:
        return (torus_degree_polygon(upper, theta)
                + torus_degree_polygon(lower, theta)
                + torus_degree_triangles(tris, theta))

    return evaluate_at_generic_point(query)


_GENERIC_CANDIDATES = [
    (Fraction(a, q), Fraction(b, q))
    for q in (7, 11, 13, 17, 19, 23, 29, 31)
    for a, b in ((1, 2), (3, 5), (2, 9), (5, 3), (4, 1), (6, 5))
]


def evaluate_at_generic_point(query: Callable[[TorusPoint2], int]) -> int:
    """Run a degree query at the first generic point from a fixed ladder
    of small odd-denominator rationals."""
    for x, y in _GENERIC_CANDIDATES:
        try:
            return query(TorusPoint2.make(x, y))
        except PointOnBoundary:
            continue
    raise PointOnBoundary("no generic point found in the candidate ladder")


def random_generic_theta(rng, query: Callable[[TorusPoint2], int],
                         attempts: int = 200) -> tuple[TorusPoint2, int]:
    """Draw odd-denominator rational points until one is generic for the
    query; returns the point and the query value."""
    for _ in range(attempts):
        q = rng.randrange(3, 100) * 2 + 1
        x = Fraction(rng.randrange(-q, q), q)
        y = Fraction(rng.randrange(-q, q), q)
        theta = TorusPoint2.make(x, y)
        try:
            return theta, query(theta)
        except PointOnBoundary:
            continue
    raise PointOnBoundary(f"no generic point after {attempts} draws")


# ----------------------------------------------------------------------
# Monte-Carlo sampler along the parametrization


@dataclass(frozen=True)
class SampleReport:
    """Outcome of the float-sampler consistency check.

    Points are in pi-units.  A sample is eligible when its rationalized
    position is farther than the edge tolerance (radians) from every
    boundary edge; every eligible sample must see multiplicity >= 1.
    """

    points: tuple[tuple[float, float], ...]
    eligible: int
    skipped: int
    violations: tuple[tuple[int, tuple[float, float], int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


EDGE_TOLERANCE_RADIANS = 1e-6


def sample_coamoeba(line: AffineLine, config: BConfig, count: int,
                    seed: int) -> SampleReport:
    """Sample the argument image of the line over the upper half plane and
    check each clear sample against the exact membrane multiplicity.

    The parameter is z = x + iy with x standard Cauchy and y log-uniform
    over [1e-3, 1e3], drawn from a seeded generator; the report is a pure
    function of (line, config, count, seed).
    """
    rng = np.random.default_rng(seed)
    xs = rng.standard_cauchy(count)
    ys = np.power(10.0, rng.uniform(-3.0, 3.0, count))
    z = xs + 1j * ys

    alphas = np.array([f.alpha for f in line.forms], dtype=float)
    betas = np.array([f.beta for f in line.forms], dtype=float)
    args = np.angle(betas[None, :] + z[:, None] * alphas[None, :])
    bmat = np.array(aligned_vectors(line, config), dtype=float)
    theta = args @ bmat / np.pi
    theta = np.mod(theta + 1.0, 2.0) - 1.0
    points = tuple((float(p[0]), float(p[1])) for p in theta)

    push = pushforward_for(line, config)
    upper, lower = boundary_polygons(line, push)
    segments = []
    for poly in (upper, lower):
        for a, b in poly.edges():
            for sx in (-2.0, 0.0, 2.0):
                for sy in (-2.0, 0.0, 2.0):
                    segments.append((a[0] + sx, a[1] + sy, b[0] + sx, b[1] + sy))
    seg = np.array(segments, dtype=float) if segments else np.zeros((0, 4))

    eligible = 0
    skipped = 0
    violations = []
    tol = EDGE_TOLERANCE_RADIANS / np.pi  # pi-units
    for idx, (px, py) in enumerate(points):
        if seg.size and _min_segment_distance(px, py, seg) <= tol:
            skipped += 1
            continue
        theta_q = TorusPoint2.make(
            Fraction(px).limit_denominator(10**9),
            Fraction(py).limit_denominator(10**9),
        )
        try:
            mult = (torus_degree_polygon(upper, theta_q)
                    + torus_degree_polygon(lower, theta_q))
        except PointOnBoundary:
            skipped += 1
            continue
        eligible += 1
        if mult < 1:
            violations.append((idx, (px, py), mult))
    return SampleReport(points, eligible, skipped, tuple(violations))


def _min_segment_distance(px: float, py: float, seg: np.ndarray) -> float:
    ax, ay, bx, by = seg[:, 0], seg[:, 1], seg[:, 2], seg[:, 3]
    dx, dy = bx - ax, by - ay
    length2 = dx * dx + dy * dy
    t = np.where(length2 > 0, ((px - ax) * dx + (py - ay) * dy) / np.where(length2 > 0, length2, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    qx, qy = ax + t * dx, ay + t * dy
    return float(np.min(np.hypot(px - qx, py - qy)))
