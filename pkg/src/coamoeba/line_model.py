"""Real lines in P^N presented by integer affine forms, in canonical order.

A line is a list of N+1 forms b_i(t) = alpha_i*t + beta_i.  The canonical
presentation sorts the forms by their zeroes (Infinity last), groups forms
with equal zero into blocks, orders the signs weakly inside each block, and
ends with the constant form 1.  Angles are kept in pi-units throughout, so
every derived chain vertex is an integer vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .errors import DegenerateLine, InvalidPivot, NotNormalized, ZeroForm


class _Infinity:
    """Zero of a constant form.  Sorts after every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("coamoeba.Infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True


INFINITY = _Infinity()

Zero = Union[Fraction, _Infinity]


@dataclass(frozen=True)
class AffineForm:
    """Integer affine form alpha*t + beta, not identically zero."""

    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha == 0 and self.beta == 0:
            raise ZeroForm("form has alpha = beta = 0")

    def value_at(self, t: Fraction) -> Fraction:
        return Fraction(self.alpha) * t + self.beta

    def __repr__(self):
        return f"AffineForm({self.alpha}, {self.beta})"


def zero_of_form(form: AffineForm) -> Zero:
    """Zero of the form: -beta/alpha as a reduced Fraction, or INFINITY."""
    if form.alpha == 0:
        return INFINITY
    return Fraction(-form.beta, form.alpha)


def sign_at_minus_infinity(form: AffineForm) -> int:
    """Constant sign of the form on the interval left of all its zeroes."""
    if form.alpha != 0:
        return -1 if form.alpha > 0 else 1
    return 1 if form.beta > 0 else -1


@dataclass(frozen=True)
class Block:
    """Forms with indices in [m, m_next) share the zero ``zeta``.

    Indices are 1-based as in the block data m_j, n_j of the canonical
    ordering.  ``n`` is where the second sign group starts; n == m_next
    means the signs are uniform on the block.
    """

    m: int
    m_next: int
    n: int
    zeta: Zero

    @property
    def mixed(self) -> bool:
        return self.n < self.m_next

    def positions(self):
        """0-based positions of this block's forms in the sorted list."""
        return range(self.m - 1, self.m_next - 1)


@dataclass(frozen=True)
class AffineLine:
    """A canonically ordered line.  Immutable; built by the constructors below.

    ``perm[k]`` is the 0-based input position of the k-th sorted form, so a
    companion list ordered like the constructor input is realigned with
    ``[items[p] for p in line.perm]``.
    """

    forms: tuple[AffineForm, ...]
    perm: tuple[int, ...]
    blocks: tuple[Block, ...]
    signs: tuple[int, ...]
    chart: Optional[tuple[tuple[int, int], tuple[Fraction, Fraction]]] = None

    @property
    def n(self) -> int:
        """N: the ambient projective dimension."""
        return len(self.forms) - 1

    @property
    def m(self) -> int:
        """M: the number of finite distinct zeroes."""
        return len(self.blocks) - 1

    @property
    def zeroes(self) -> tuple[Zero, ...]:
        return tuple(b.zeta for b in self.blocks)

    def sign_vector_on_interval(self, j: int) -> tuple[int, ...]:
        """Exact signs of all forms on the j-th interval (j=1 is left of all
        zeroes; j=2 is between the first and second zero, and so on)."""
        if j == 1:
            t = self.blocks[0].zeta - 1
        else:
            lo = self.blocks[j - 2].zeta
            hi = self.blocks[j - 1].zeta
            t = lo + 1 if hi == INFINITY else (lo + hi) / 2
        out = []
        for f in self.forms:
            v = f.value_at(t)
            out.append(1 if v > 0 else -1)
        return tuple(out)


def _as_form(obj) -> AffineForm:
    if isinstance(obj, AffineForm):
        return obj
    a, b = obj
    if a != int(a) or b != int(b):
        raise ZeroForm(f"forms need integer coefficients, got {(a, b)}")
    return AffineForm(int(a), int(b))


def _group_sum_sq(forms: Sequence[AffineForm]) -> int:
    sa = sum(f.alpha for f in forms)
    sb = sum(f.beta for f in forms)
    return sa * sa + sb * sb


def line_from_forms(forms: Sequence, normalize: bool = True,
                    chart=None) -> AffineLine:
    """Build the canonical presentation from a list of integer forms.

    Stable-sorts by zero with Infinity last, partitions into blocks, orders
    each block's sign groups, and rescales the final form to the constant 1.
    With ``normalize`` the shorter sign group (by squared length of the
    summed (alpha, beta) vectors) is put first in every finite block; ties
    go to the group holding the lowest input index.  The block at infinity
    is always ordered negatives first so the constant 1 can stay last.
    """
    flist = [_as_form(f) for f in forms]
    if len(flist) < 3:
        raise DegenerateLine(f"need at least 3 forms, got {len(flist)}")

    zeroes = [zero_of_form(f) for f in flist]
    order = sorted(range(len(flist)), key=lambda i: (zeroes[i] == INFINITY, zeroes[i]))

    # group sorted positions into blocks of equal zero
    raw_blocks: list[list[int]] = []
    for i in order:
        if raw_blocks and zeroes[raw_blocks[-1][-1]] == zeroes[i]:
            raw_blocks[-1].append(i)
        else:
            raw_blocks.append([i])
    if len(raw_blocks) < 2:
        raise DegenerateLine("fewer than two distinct zeroes")
    if zeroes[raw_blocks[-1][0]] != INFINITY:
        raise NotNormalized("no constant form: the zero at infinity is missing")

    signs = {i: sign_at_minus_infinity(flist[i]) for i in range(len(flist))}

    ordered: list[int] = []
    block_data: list[tuple[int, int, int, Zero]] = []  # m, m_next, n (1-based)
    for bi, idxs in enumerate(raw_blocks):
        neg = [i for i in idxs if signs[i] < 0]
        pos = [i for i in idxs if signs[i] > 0]
        last_block = bi == len(raw_blocks) - 1
        if last_block:
            if not pos:
                raise NotNormalized("no positive constant form to normalize to 1")
            first, second = (neg, pos) if neg else (pos, [])
        elif not neg or not pos:
            first, second = idxs, []
        elif not normalize:
            first, second = (neg, pos) if signs[idxs[0]] < 0 else (pos, neg)
        else:
            ln, lp = _group_sum_sq([flist[i] for i in neg]), _group_sum_sq([flist[i] for i in pos])
            if ln < lp:
                first, second = neg, pos
            elif lp < ln:
                first, second = pos, neg
            else:
                first, second = (neg, pos) if min(neg) < min(pos) else (pos, neg)
        m = len(ordered) + 1
        n = m + len(first)  # equals m_next exactly when the block is uniform
        ordered.extend(first)
        ordered.extend(second)
        block_data.append((m, len(ordered) + 1, n, zeroes[idxs[0]]))

    last = flist[ordered[-1]]
    if last.alpha != 0 or last.beta <= 0:
        raise NotNormalized("last form after sorting is not a positive constant")

    out_forms = [flist[i] for i in ordered]
    out_forms[-1] = AffineForm(0, 1)
    out_signs = tuple(signs[i] for i in ordered)
    blocks = tuple(Block(m, mn, n, z) for (m, mn, n, z) in block_data)
    return AffineLine(
        forms=tuple(out_forms),
        perm=tuple(ordered),
        blocks=blocks,
        signs=out_signs,
        chart=chart,
    )


def _config_vectors(config) -> list[tuple[int, int]]:
    vecs = getattr(config, "vectors", config)
    return [(int(v[0]), int(v[1])) for v in vecs]


def line_from_bconfig(config, pivot: int, normalize: bool = True,
                      x_shift: Fraction = Fraction(0)) -> AffineLine:
    """Line cut out by a planar configuration, in the chart where the pivot
    vector's form is the constant 1.

    ``pivot`` is 1-based.  The chart direction v is pinned clockwise of the
    pivot (det(b_pivot, v) < 0) and the base point is x = b/|b|^2, so the
    pivot form evaluates to 1.  ``x_shift`` moves x along v; the result is
    the same line with all zeroes shifted, which the tests exercise.
    """
    vectors = _config_vectors(config)
    if not 1 <= pivot <= len(vectors):
        raise InvalidPivot(f"pivot {pivot} out of range 1..{len(vectors)}")
    bp = vectors[pivot - 1]
    g = gcd(bp[0], bp[1])
    v = (bp[1] // g, -bp[0] // g)
    norm2 = bp[0] * bp[0] + bp[1] * bp[1]
    x = (Fraction(bp[0], norm2) + x_shift * v[0],
         Fraction(bp[1], norm2) + x_shift * v[1])

    order = [i for i in range(len(vectors)) if i != pivot - 1] + [pivot - 1]
    alphas = [vectors[i][0] * v[0] + vectors[i][1] * v[1] for i in order]
    betas = [vectors[i][0] * x[0] + vectors[i][1] * x[1] for i in order]
    den = 1
    for b in betas:
        den = den * b.denominator // gcd(den, b.denominator)
    raw = [(a * den, int(b * den)) for a, b in zip(alphas, betas)]

    line = line_from_forms(raw, normalize=normalize, chart=(v, x))
    # rewrite perm to point at the original configuration positions
    return AffineLine(
        forms=line.forms,
        perm=tuple(order[p] for p in line.perm),
        blocks=line.blocks,
        signs=line.signs,
        chart=line.chart,
    )
