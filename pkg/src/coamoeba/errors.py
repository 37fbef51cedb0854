"""Exception hierarchy shared across the package."""


class CoamoebaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CoamoebaError):
    """User-supplied data is rejected by a precondition."""


class InternalInvariantError(CoamoebaError):
    """A mathematically guaranteed invariant failed; indicates a bug."""


# line construction

class ZeroForm(InputError):
    """An affine form with alpha = beta = 0 was supplied."""


class DegenerateLine(InputError):
    """Fewer than two distinct zeroes, or fewer than three forms."""


class NotNormalized(InputError):
    """The last form (after sorting) is not a positive constant."""


class InvalidPivot(InputError):
    """Pivot index out of range."""


# planar configurations

class TooFew(InputError):
    """A configuration needs at least three vectors."""


class ZeroVector(InputError):
    """Configurations may not contain the zero vector."""


class SumNonzero(InputError):
    """Configuration vectors must sum to zero."""


class RankDeficient(InputError):
    """Configuration vectors must span the plane."""


class IndexOutOfRange(InputError):
    """A class coefficient refers to a vector index outside the configuration."""


class NonGenericDirection(InputError):
    """The query direction is parallel to a configuration vector."""


class NotGaleDualizable(InputError):
    """Repeated vectors, or the configuration does not generate the full lattice."""


class DegenerateHull(InputError):
    """Points do not affinely span their ambient space."""


class DimensionMismatch(InputError):
    """Chain or point dimension differs from what the operation expects."""


class NonUnitEdge(InputError):
    """A triangle edge is not an integer multiple of a {-1,0,1}-vector."""


class PointOnBoundary(InputError):
    """A degree query point lies on a chain edge; redraw the point."""


class ChamberMismatch(InternalInvariantError):
    """Chamber sums disagreed; cannot happen for valid input."""


# CLI

class ParseError(InputError):
    """Malformed input document."""
