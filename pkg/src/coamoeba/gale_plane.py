"""Planar vector configurations: chamber sums, zonotopes, Gale duals, pushforwards.

A configuration B is a multiset of N+1 nonzero integer vectors in Z^2 with
sum zero that spans the plane.  Everything here is exact: cone membership,
chamber enumeration and lattice volumes are decided with integer sign tests
only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .chain_builder import Triangle, TriangleChain, zonotope_chain
from .errors import (
    ChamberMismatch,
    DegenerateHull,
    DimensionMismatch,
    IndexOutOfRange,
    NonGenericDirection,
    NotGaleDualizable,
    RankDeficient,
    SumNonzero,
    TooFew,
    ZeroVector,
)
from .line_model import AffineLine

Vec2 = tuple[int, int]


def det2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def dot2(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[0] + a[1] * b[1]


def _primitive(v: Vec2) -> Vec2:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


@dataclass(frozen=True)
class BConfig:
    """Validated multiset of N+1 integer vectors spanning R^2 with sum 0."""

    vectors: tuple[Vec2, ...]

    @property
    def n(self) -> int:
        return len(self.vectors) - 1

    def __iter__(self):
        return iter(self.vectors)


def validate_bconfig(raw: Iterable[Sequence[int]]) -> BConfig:
    """Check the multiset axioms and wrap the vectors."""
    vectors = tuple((int(v[0]), int(v[1])) for v in raw)
    if len(vectors) < 3:
        raise TooFew(f"need at least 3 vectors, got {len(vectors)}")
    if any(v == (0, 0) for v in vectors):
        raise ZeroVector("configuration contains the zero vector")
    sx = sum(v[0] for v in vectors)
    sy = sum(v[1] for v in vectors)
    if (sx, sy) != (0, 0):
        raise SumNonzero(f"vectors sum to {(sx, sy)}, expected (0, 0)")
    if all(det2(vectors[0], v) == 0 for v in vectors[1:]):
        raise RankDeficient("vectors span only a line")
    return BConfig(vectors)


# ----------------------------------------------------------------------
# pushforward of lattice data through e_i -> b_i


@dataclass(frozen=True)
class Pushforward:
    """Linear map on pi-unit lattices sending e_i to columns[i-1]."""

    columns: tuple[Vec2, ...]

    def apply(self, vec: Sequence[int]):
        if len(vec) != len(self.columns):
            raise DimensionMismatch(
                f"vector of length {len(vec)} under a map with {len(self.columns)} columns"
            )
        x = sum(c[0] * v for c, v in zip(self.columns, vec))
        y = sum(c[1] * v for c, v in zip(self.columns, vec))
        return (x, y)


def aligned_vectors(line: AffineLine, config: BConfig) -> tuple[Vec2, ...]:
    """Configuration vectors reordered to match the line's sorted forms."""
    if len(config.vectors) != line.n + 1:
        raise DimensionMismatch(
            f"configuration has {len(config.vectors)} vectors for an N={line.n} line"
        )
    return tuple(config.vectors[p] for p in line.perm)


def pushforward_for(line: AffineLine, config: BConfig) -> Pushforward:
    """The map Arg-side map e_i -> b_i for the line's first N coordinates."""
    return Pushforward(aligned_vectors(line, config)[:-1])


def push_class(cls, config: Union[BConfig, Sequence[Vec2]]) -> int:
    """Integer the class maps to on the target 2-torus: sum of
    coeff(i,j) * det(b_i, b_j).  The vectors must already be aligned with
    the class's index order."""
    vectors = list(config.vectors if isinstance(config, BConfig) else config)
    total = 0
    for (i, j), c in cls.coeff.items():
        if not 1 <= i < j <= len(vectors):
            raise IndexOutOfRange(f"class pair {(i, j)} outside 1..{len(vectors)}")
        total += c * det2(vectors[i - 1], vectors[j - 1])
    return total


# ----------------------------------------------------------------------
# chamber sums


def _sorted_rays(rays: Iterable[Vec2]) -> list[Vec2]:
    distinct = sorted(set(_primitive(r) for r in rays))

    # exact CCW order from the positive x-axis via half-plane + cross tests
    def less(a, b):
        ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
        hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
        if ha != hb:
            return ha < hb
        return det2(a, b) > 0

    out: list[Vec2] = []
    for r in distinct:
        k = 0
        while k < len(out) and less(out[k], r):
            k += 1
        out.insert(k, r)
    return out


def chamber_representatives(rays: Iterable[Vec2]) -> list[Vec2]:
    """One interior integer vector per chamber of the ray arrangement.

    The ray sets used here are centrally symmetric and span, so consecutive
    rays subtend less than pi and the sum of adjacent primitive rays is an
    exact interior point.
    """
    sorted_rays = _sorted_rays(rays)
    reps = []
    for r1, r2 in zip(sorted_rays, sorted_rays[1:] + sorted_rays[:1]):
        rep = (r1[0] + r2[0], r1[1] + r2[1])
        reps.append(_primitive(rep))
    return reps


def d_b_chamber(config: BConfig, v: Sequence[int]) -> int:
    """Sum of |det(b_i, b_j)| over pairs whose cone contains v, exact."""
    v = (int(v[0]), int(v[1]))
    vectors = config.vectors
    for b in vectors:
        if det2(b, v) == 0:
            raise NonGenericDirection(f"direction {v} is parallel to {b}")
    total = 0
    for bi, bj in itertools.combinations(vectors, 2):
        d = det2(bi, bj)
        if d == 0:
            continue
        # v = s*bi + t*bj with s,t > 0 iff both Cramer numerators share d's sign
        if det2(v, bj) * d > 0 and det2(bi, v) * d > 0:
            total += abs(d)
    return total


def d_b(config: BConfig) -> int:
    """The chamber-independent invariant: evaluate every chamber of the
    ray arrangement of B and check the sums agree."""
    rays = [b for b in config.vectors] + [(-b[0], -b[1]) for b in config.vectors]
    values = [d_b_chamber(config, rep) for rep in chamber_representatives(rays)]
    if len(set(values)) != 1:
        raise ChamberMismatch(f"chamber sums disagree: {values}")
    return values[0]


# ----------------------------------------------------------------------
# the zonotope generated by B


@dataclass(frozen=True)
class ZonotopeB:
    """Vertices of the Minkowski sum of the segments [0, pi*b_i], in
    counterclockwise cyclic order (pi-units), and the edge vectors
    between consecutive vertices."""

    vertices: tuple[Vec2, ...]
    edges: tuple[Vec2, ...]

    def area(self) -> Fraction:
        """Enclosed area in pi^2-units (shoelace)."""
        total = 0
        verts = self.vertices
        for a, b in zip(verts, verts[1:] + verts[:1]):
            total += det2(a, b)
        return Fraction(total, 2)


def zonotope_b(config: BConfig) -> ZonotopeB:
    """Vertex description of Z_B from its normal fan: the vertex extreme
    in a generic direction v is the sum of the b_i with <b_i, v> > 0."""
    normals = []
    for b in config.vectors:
        perp = (-b[1], b[0])
        normals.append(perp)
        normals.append((-perp[0], -perp[1]))
    verts = []
    for rep in chamber_representatives(normals):
        q = (sum(b[0] for b in config.vectors if dot2(b, rep) > 0),
             sum(b[1] for b in config.vectors if dot2(b, rep) > 0))
        verts.append(q)
    edges = tuple(
        (b[0] - a[0], b[1] - a[1]) for a, b in zip(verts, verts[1:] + verts[:1])
    )
    return ZonotopeB(tuple(verts), edges)


def minkowski_vertices_bruteforce(config: BConfig) -> set[Vec2]:
    """Support-function oracle: vertices of the segment Minkowski sum by
    enumerating all subset sums and keeping the extreme ones."""
    sums = {(0, 0)}
    for b in config.vectors:
        sums = {s for s in sums} | {(s[0] + b[0], s[1] + b[1]) for s in sums}
    pts = sorted(sums)
    hull: list[Vec2] = []
    for chain_dir in (pts, list(reversed(pts))):
        start = len(hull)
        for p in chain_dir:
            while (len(hull) - start >= 2
                   and det2((hull[-1][0] - hull[-2][0], hull[-1][1] - hull[-2][1]),
                            (p[0] - hull[-1][0], p[1] - hull[-1][1])) <= 0):
                hull.pop()
            hull.append(p)
        hull.pop()
    return set(hull)


def pushforward_chain(chain: TriangleChain,
                      push: Union[Pushforward, BConfig]) -> TriangleChain:
    """Apply the linear pushforward to every triangle vertex.  A BConfig is
    accepted when its vectors are already aligned with the chain's
    coordinates; its last vector (the pivot's) is dropped."""
    if isinstance(push, BConfig):
        push = Pushforward(push.vectors[:-1])
    tris = tuple(
        Triangle(push.apply(t.a), push.apply(t.b), push.apply(t.c), t.coeff)
        for t in chain.triangles
    )
    return TriangleChain(tris, 2)


@dataclass(frozen=True)
class PlanarPathImage:
    """Image of a zonotope path in the plane, with labels for rendering."""

    points: tuple[tuple[str, Vec2], ...]
    triangles: TriangleChain


def pushforward_path(path, push: Pushforward) -> PlanarPathImage:
    """Push a zonotope path and its cone to the plane, keeping the cyclic
    point order and prime flags as labels."""
    pts = []
    for p in path.points:
        label = f"q{p.index}'" if p.primed else f"q{p.index}"
        pts.append((label, push.apply(p.coords)))
    return PlanarPathImage(tuple(pts), pushforward_chain(zonotope_chain(path), push))


# ----------------------------------------------------------------------
# exact integer linear algebra for the Gale dual


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def _hermite_rows(mat: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite form H of ``mat`` with unimodular U such that U*mat = H."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    h = [row[:] for row in mat]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, m):
            if h[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        h[row], h[pivot] = h[pivot], h[row]
        u[row], u[pivot] = u[pivot], u[row]
        for r in range(row + 1, m):
            while h[r][col]:
                g, s, t = _xgcd(h[row][col], h[r][col])
                a, b = h[row][col] // g, h[r][col] // g
                new_row = [s * x + t * y for x, y in zip(h[row], h[r])]
                new_r = [-b * x + a * y for x, y in zip(h[row], h[r])]
                new_urow = [s * x + t * y for x, y in zip(u[row], u[r])]
                new_ur = [-b * x + a * y for x, y in zip(u[row], u[r])]
                h[row], h[r] = new_row, new_r
                u[row], u[r] = new_urow, new_ur
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        for r in range(row):
            q = h[r][col] // h[row][col]
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[row])]
        row += 1
    return h, u


def _int_inverse(mat: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = [[x for x in row[n:]] for row in a]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def _unimodular_with_first_row(c: list[int]) -> list[list[int]]:
    """A unimodular matrix whose first row is the primitive vector c."""
    n = len(c)
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    vec = list(c)
    for i in range(1, n):
        if vec[i] == 0:
            continue
        g, s, t = _xgcd(vec[0], vec[i])
        a, b = vec[0] // g, vec[i] // g
        for r in range(n):
            col0, coli = v[r][0], v[r][i]
            v[r][0] = s * col0 + t * coli
            v[r][i] = -b * col0 + a * coli
        vec[0], vec[i] = g, 0
    if vec[0] < 0:
        for r in range(n):
            v[r][0] = -v[r][0]
        vec[0] = -vec[0]
    assert vec[0] == 1, "first row must be primitive"
    return _int_inverse(v)


@dataclass(frozen=True)
class GaleDualA:
    """Configuration A with one point per vector of B: the rows (1, a_i)
    span the integer kernel of B's 2 x (N+1) matrix."""

    points: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0


def gale_dual(config: BConfig) -> GaleDualA:
    """Canonical Gale dual point configuration of B.

    Needs distinct vectors that generate Z^2 (gcd of all 2x2 minors 1).
    The kernel lattice of B's matrix is saturated, so the all-ones vector
    extends to a lattice basis; the remaining rows, Hermite-reduced and
    translated to nonnegative coordinates, are the point coordinates.
    """
    vectors = config.vectors
    if len(set(vectors)) != len(vectors):
        raise NotGaleDualizable("repeated vectors in B")
    g = 0
    for a, b in itertools.combinations(vectors, 2):
        g = gcd(g, abs(det2(a, b)))
    if g != 1:
        raise NotGaleDualizable(f"vectors generate an index-{g} sublattice of Z^2")

    npts = len(vectors)
    bt = [[v[0], v[1]] for v in vectors]          # (N+1) x 2
    h, u = _hermite_rows(bt)
    kernel = [u[r] for r in range(npts) if not any(h[r])]
    assert len(kernel) == npts - 2

    # coordinates of the all-ones kernel vector in this basis
    coords = _solve_int(kernel, [1] * npts)
    t = _unimodular_with_first_row(coords)
    basis = [[sum(t[i][k] * kernel[k][j] for k in range(len(kernel)))
              for j in range(npts)] for i in range(len(kernel))]
    assert basis[0] == [1] * npts

    lower = basis[1:]
    if lower:
        lower, _ = _hermite_rows(lower)
        lower = [[x - min(row) for x in row] for row in lower]
    points = tuple(tuple(row[j] for row in lower) for j in range(npts))
    return GaleDualA(points)


def _solve_int(rows: list[list[int]], target: list[int]) -> list[int]:
    """Integer coordinates of ``target`` in the lattice spanned by ``rows``."""
    k = len(rows)
    aug = [[Fraction(rows[r][c]) for r in range(k)] + [Fraction(target[c])]
           for c in range(len(target))]
    sol = [Fraction(0)] * k
    row = 0
    used = []
    for col in range(k):
        piv = next((r for r in range(row, len(aug)) if aug[r][col]), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        aug[row] = [x / aug[row][col] for x in aug[row]]
        for r in range(len(aug)):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        used.append(col)
        row += 1
    for idx, col in enumerate(used):
        sol[col] = aug[idx][-1]
    for r in range(row, len(aug)):
        assert not aug[r][-1], "target outside the lattice"
    assert all(x.denominator == 1 for x in sol)
    return [int(x) for x in sol]


# ----------------------------------------------------------------------
# exact normalized volume of a lattice point configuration


def _affine_rank(points: list[tuple[int, ...]]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    h, _ = _hermite_rows(rows)
    return sum(1 for row in h if any(row))


def _kernel_basis_of_row(a: list[int]) -> list[list[int]]:
    """Basis of the saturated integer kernel of the 1 x d matrix [a]."""
    d = len(a)
    h, u = _hermite_rows([[x] for x in a])
    return [u[r] for r in range(d) if h[r][0] == 0]


def _facet_coordinates(points: list[tuple[int, ...]], a: list[int]) -> list[tuple[int, ...]]:
    basis = _kernel_basis_of_row(a)
    base = points[0]
    out = []
    for p in points:
        diff = [p[i] - base[i] for i in range(len(base))]
        out.append(tuple(_solve_int(basis, diff)))
    return out


def _normal_of_subset(diffs: list[list[int]]) -> list[int] | None:
    """Primitive normal of the hyperplane spanned by d-1 difference vectors
    in Z^d, or None if they do not span a hyperplane."""
    d = len(diffs[0])
    normal = []
    for i in range(d):
        minor = [[row[j] for j in range(d) if j != i] for row in diffs]
        normal.append((-1) ** i * _det_int(minor))
    if all(x == 0 for x in normal):
        return None
    g = 0
    for x in normal:
        g = gcd(g, abs(x))
    return [x // g for x in normal]


def _det_int(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def _nvol(points: list[tuple[int, ...]], d: int) -> int:
    if d == 0:
        return 1
    if d == 1:
        vals = [p[0] for p in points]
        return max(vals) - min(vals)
    pts = sorted(set(points))
    v0 = pts[0]
    facets: dict[tuple[tuple[int, ...], int], list[tuple[int, ...]]] = {}
    for subset in itertools.combinations(pts, d):
        diffs = [[subset[k][i] - subset[0][i] for i in range(d)] for k in range(1, d)]
        normal = _normal_of_subset(diffs)
        if normal is None:
            continue
        c = sum(n * x for n, x in zip(normal, subset[0]))
        vals = [sum(n * x for n, x in zip(normal, p)) for p in pts]
        if all(v <= c for v in vals):
            key = (tuple(normal), c)
        elif all(v >= c for v in vals):
            key = (tuple(-n for n in normal), -c)
        else:
            continue
        if key not in facets:
            a = list(key[0])
            on = [p for p, v in zip(pts, vals) if v == c]
            facets[key] = on
    total = 0
    for (a, c), on_pts in facets.items():
        height = c - sum(n * x for n, x in zip(a, v0))
        if height == 0:
            continue
        coords = _facet_coordinates(on_pts, list(a))
        total += abs(height) * _nvol(coords, d - 1)
    return total


def normalized_volume(dual: Union[GaleDualA, Sequence[Sequence[int]]]) -> int:
    """n! times the Euclidean volume of the convex hull, computed exactly
    by pyramid decomposition over the facets not containing a base vertex."""
    pts = list(dual.points) if isinstance(dual, GaleDualA) else [tuple(int(x) for x in p) for p in dual]
    if not pts:
        raise DegenerateHull("no points")
    d = len(pts[0])
    if d == 0:
        return 1
    if _affine_rank(pts) < d:
        raise DegenerateHull("points do not affinely span their ambient space")
    return _nvol(pts, d)
