"""Exception hierarchy for geometric and numerical failures."""


class GeometryError(Exception):
    """Base class for all geometry and verification errors."""


class DegenerateInput(GeometryError):
    """Input points or bodies are not full-dimensional."""


class DimensionMismatch(GeometryError):
    """Operands live in different ambient dimensions."""


class ZeroScale(GeometryError):
    """Scaling a body by zero would collapse it to a point."""


class OriginNotInterior(GeometryError):
    """Polarity requested for a body that does not contain 0 strictly."""


class Unbounded(GeometryError):
    """An H-polytope admits an unbounded direction."""


class EmptyIntersection(GeometryError):
    """Intersection of half-space systems has no interior point."""


class EmptySection(GeometryError):
    """An affine subspace misses the interior of the body."""


class DegenerateSection(GeometryError):
    """The section exists but is lower-dimensional inside the subspace."""


class NumericalFailure(GeometryError):
    """A computation exceeded its conditioning budget; result withheld."""


class IllConditioned(NumericalFailure):
    """Interpolation system condition estimate above threshold."""


class BadSpec(GeometryError):
    """A body specification is inconsistent or unsupported."""


class VerificationFailure(GeometryError):
    """A numerically proven statement failed; the run must stop loudly."""
