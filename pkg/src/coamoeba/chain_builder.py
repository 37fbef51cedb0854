"""Coamoeba skeletons, zonotope paths and chains, boundaries, homology.

All vertices live in (pi*Z)^N and are stored as integer tuples in pi-units.
Reduction mod 2 gives the torus representative.  The convention
e_{N+1} = -(e_1 + ... + e_N) is pre-expanded, so every direction vector is
an honest length-N integer tuple with entries in {-1, 0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .errors import NonUnitEdge
from .line_model import AffineLine

IVec = tuple[int, ...]


def vadd(a: IVec, b: IVec) -> IVec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: IVec, b: IVec) -> IVec:
    return tuple(x - y for x, y in zip(a, b))


def vneg(a: IVec) -> IVec:
    return tuple(-x for x in a)


def vmod2(a: IVec) -> IVec:
    return tuple(x % 2 for x in a)


def basis_vector(i: int, n: int) -> IVec:
    """e_i for i = 1..N, and -(e_1+...+e_N) for i = N+1."""
    if i == n + 1:
        return tuple([-1] * n)
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def block_vectors(line: AffineLine) -> tuple[list[IVec], list[IVec], list[IVec]]:
    """The per-block direction data (f_j, g_j, h_j), e_{N+1} expanded.

    f_j sums the basis vectors of block j, g_j those of its first sign
    group, and h_j the sign-weighted sum; h_j = sgn(first)*(2g_j - f_j).
    """
    n = line.n
    fs, gs, hs = [], [], []
    for blk in line.blocks:
        f = tuple([0] * n)
        g = tuple([0] * n)
        h = tuple([0] * n)
        for pos in blk.positions():
            e = basis_vector(pos + 1, n)
            f = vadd(f, e)
            if pos + 1 < blk.n:
                g = vadd(g, e)
            h = vadd(h, e if line.signs[pos] > 0 else vneg(e))
        fs.append(f)
        gs.append(g)
        hs.append(h)
    return fs, gs, hs


@dataclass(frozen=True)
class CoamoebaSkeleton:
    """Vertices p_1..p_{M+1} (mod 2, entries in {0,1}) plus the f/g/h data."""

    vertices: tuple[IVec, ...]
    f: tuple[IVec, ...]
    g: tuple[IVec, ...]
    h: tuple[IVec, ...]


def coamoeba_vertices(line: AffineLine) -> CoamoebaSkeleton:
    """Vertices of the coamoeba: p_1 is the arg-pattern of the signs at
    minus infinity, and each block step subtracts f_j mod 2."""
    n = line.n
    fs, gs, hs = block_vectors(line)
    p = tuple(0 if s > 0 else 1 for s in line.signs[:n])
    verts = [p]
    for f in fs[:-1]:
        p = vmod2(vsub(p, f))
        verts.append(p)
    for j, v in enumerate(verts):
        sign_vec = line.sign_vector_on_interval(j + 1)
        expect = tuple((0 if sign_vec[i] * (1 if sign_vec[n] > 0 else -1) > 0 else 1)
                       for i in range(n))
        assert v == expect, "vertex recurrence disagrees with direct sign evaluation"
    return CoamoebaSkeleton(tuple(verts), tuple(fs), tuple(gs), tuple(hs))


@dataclass(frozen=True)
class PathPoint:
    """One entry of the cyclic path P(l): the j-th lift, primed or not."""

    index: int
    primed: bool
    coords: IVec


@dataclass(frozen=True)
class ZonotopePath:
    """The lifts ptilde_j and ptilde'_j (j = 1..2M+2) and the cyclic path
    through them in descending order, as in the zonotope-chain definition."""

    ptilde: tuple[IVec, ...]
    pprime: tuple[IVec, ...]
    points: tuple[PathPoint, ...]

    @property
    def half(self) -> int:
        """M+1: half the number of lifts."""
        return len(self.ptilde) // 2


def zonotope_path(line: AffineLine) -> ZonotopePath:
    """Lay out the piecewise linear path P(l) in the universal cover.

    ptilde_1 is the unique {0,pi}^N lift of p_1; each block step adds h_j;
    a mixed block also contributes the detour point
    ptilde'_j = ptilde_j + 2*sgn(first group)*g_j.  The second half is the
    pointwise negation of the first (primed points included).
    """
    n = line.n
    mm = line.m + 1
    fs, gs, hs = block_vectors(line)
    pt = [tuple(0 if s > 0 else 1 for s in line.signs[:n])]
    pp = []
    for j in range(mm):
        blk = line.blocks[j]
        sgn = line.signs[blk.m - 1]
        if blk.mixed:
            detour = tuple(2 * sgn * x for x in gs[j])
            pp.append(vadd(pt[j], detour))
        else:
            pp.append(pt[j])
        pt.append(vadd(pt[j], hs[j]))
    assert pt[mm] == vneg(pt[0]), "ptilde_{M+2} must equal -ptilde_1"
    ptilde = pt[:mm] + [vneg(v) for v in pt[:mm]]
    pprime = pp + [vneg(v) for v in pp]
    pts = []
    for j in range(2 * mm, 0, -1):
        pts.append(PathPoint(j, True, pprime[j - 1]))
        pts.append(PathPoint(j, False, ptilde[j - 1]))
    return ZonotopePath(tuple(ptilde), tuple(pprime), tuple(pts))


@dataclass(frozen=True)
class Triangle:
    a: IVec
    b: IVec
    c: IVec
    coeff: int = 1


@dataclass(frozen=True)
class TriangleChain:
    """Formal signed sum of oriented lattice triangles.

    Vertex order encodes orientation.  Degenerate (collinear) triangles are
    kept; they are inert in every degree query.
    """

    triangles: tuple[Triangle, ...]
    dim: int


def zonotope_chain(path: ZonotopePath) -> TriangleChain:
    """Cone over P(l) with apex 0: triangles conv(0, pt_{i+1}, pp_i) and
    conv(0, pp_i, pt_i) for i = 2M+2 down to 1, with pt_{2M+3} := pt_1."""
    origin = tuple([0] * len(path.ptilde[0]))
    tris = []
    k = len(path.ptilde)
    for i in range(k, 0, -1):
        nxt = path.ptilde[0] if i == k else path.ptilde[i]
        tris.append(Triangle(origin, nxt, path.pprime[i - 1]))
        tris.append(Triangle(origin, path.pprime[i - 1], path.ptilde[i - 1]))
    return TriangleChain(tuple(tris), len(origin))


class EdgeChain:
    """Formal integer combination of directed unit lattice edges on T^N.

    An atom is (basepoint mod 2, displacement in {-1,0,1}^N).  The reversed
    presentation (base+disp mod 2, -disp) denotes the same edge with
    opposite sign; atoms are stored under the lexicographically smaller of
    the two keys so cancellation is a plain table update.
    """

    def __init__(self):
        self._table: dict[tuple[IVec, IVec], int] = {}

    @staticmethod
    def _canon(base: IVec, disp: IVec) -> tuple[tuple[IVec, IVec], int]:
        alt = (vmod2(vadd(base, disp)), vneg(disp))
        key = (vmod2(base), disp)
        if alt < key:
            return alt, -1
        return key, 1

    def add(self, base: IVec, disp: IVec, coeff: int = 1) -> None:
        if coeff == 0 or all(x == 0 for x in disp):
            return
        key, flip = self._canon(base, disp)
        new = self._table.get(key, 0) + coeff * flip
        if new:
            self._table[key] = new
        else:
            self._table.pop(key, None)

    def extend(self, other: "EdgeChain", scale: int = 1) -> None:
        for (base, disp), c in other._table.items():
            self.add(base, disp, c * scale)

    def is_zero(self) -> bool:
        return not self._table

    def items(self):
        return sorted(self._table.items())

    def __len__(self):
        return len(self._table)

    def __eq__(self, other):
        return isinstance(other, EdgeChain) and self._table == other._table

    def __repr__(self):
        return f"EdgeChain({self.items()!r})"


def coamoeba_boundary(skel: CoamoebaSkeleton) -> EdgeChain:
    """Boundary of the coamoeba chain: for each block circle two unit
    edges from p_j to p_{j+1}, one stepping -f_j and one stepping +f_j."""
    chain = EdgeChain()
    for j, f in enumerate(skel.f):
        p = skel.vertices[j]
        chain.add(p, vneg(f), 1)
        chain.add(p, f, 1)
    return chain


def _decompose_unit(base: IVec, disp: IVec) -> list[tuple[IVec, IVec]]:
    g = 0
    for x in disp:
        g = gcd(g, abs(x))
    if g == 0:
        return []
    step = tuple(x // g for x in disp)
    if any(abs(x) > 1 for x in step):
        raise NonUnitEdge(f"edge displacement {disp} is not a multiple of a unit step")
    out = []
    cur = base
    for _ in range(g):
        out.append((cur, step))
        cur = vadd(cur, step)
    return out


def chain_boundary(chain: TriangleChain) -> EdgeChain:
    """Simplicial boundary of a triangle chain as a unit-edge chain on T^N.

    Opposite directed segments are cancelled in the universal cover first
    (the cone's radial edges need not decompose into unit steps on their
    own), then each survivor is split into unit steps and reduced mod 2.
    """
    segments: dict[tuple[IVec, IVec], int] = {}

    def add_segment(a: IVec, b: IVec, c: int) -> None:
        if a == b:
            return
        key, sign = ((a, b), c) if a <= b else ((b, a), -c)
        new = segments.get(key, 0) + sign
        if new:
            segments[key] = new
        else:
            segments.pop(key, None)

    for t in chain.triangles:
        add_segment(t.a, t.b, t.coeff)
        add_segment(t.b, t.c, t.coeff)
        add_segment(t.c, t.a, t.coeff)

    out = EdgeChain()
    for (a, b), c in segments.items():
        for base, step in _decompose_unit(a, vsub(b, a)):
            out.add(base, step, c)
    return out


@dataclass(frozen=True)
class CycleReport:
    """Residual of the boundary cancellation check; empty means success."""

    residual: EdgeChain

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


def verify_cycle(line: AffineLine) -> CycleReport:
    """Check that the coamoeba and zonotope chains share their boundary
    with opposite orientation: the summed boundary must vanish."""
    residual = coamoeba_boundary(coamoeba_vertices(line))
    residual.extend(chain_boundary(zonotope_chain(zonotope_path(line))))
    return CycleReport(residual)


@dataclass(frozen=True)
class HomologyClass2:
    """Class of the summed cycle in H_2(T^N): a {0,1} table over pairs
    i < j, nonzero exactly when (ptilde_{1,i}, ptilde_{1,j}) = (0, pi)."""

    coeff: dict  # (i, j) 1-based, i < j -> int

    def pairs(self):
        return sorted(self.coeff.items())

    def __eq__(self, other):
        return isinstance(other, HomologyClass2) and dict(self.coeff) == dict(other.coeff)


def homology_class(line: AffineLine) -> HomologyClass2:
    """Coefficient table of the cycle's homology class from the sign
    pattern of the first lift."""
    p1 = tuple(0 if s > 0 else 1 for s in line.signs[:line.n])
    coeff = {}
    for i in range(line.n):
        for j in range(i + 1, line.n):
            if p1[i] == 0 and p1[j] == 1:
                coeff[(i + 1, j + 1)] = 1
    return HomologyClass2(coeff)
