"""Exception types shared across the package.

Precondition violations raise subclasses of :class:`PwlatticeError`; the CLI
maps them to exit code 3.  Malformed serialized input raises
:class:`InputFormatError` (exit code 2).  Errors documented as "must never
occur on valid input" (``NoWitnessError``, ``NoPathError``,
``AmbiguousMatchError``, ``TieDetectedError``) are correctness alarms: they
signal a bug in the arrangement machinery, not bad user data.
"""


class PwlatticeError(Exception):
    """Base class for all package errors."""


class InputFormatError(PwlatticeError):
    """Serialized payload is malformed or uses an unsupported encoding."""


class ZeroNormalError(PwlatticeError):
    """A hyperplane or halfspace was given an all-zero normal vector."""


class EmptyRegionError(PwlatticeError):
    """An operation that needs a nonempty polyhedron got an empty one."""


class DegenerateDomainError(PwlatticeError):
    """The domain has no interior point."""


class UnboundedDomainError(PwlatticeError):
    """A bounded domain is required (cell enumeration needs a bounding box)."""


class OutsideDomainError(PwlatticeError):
    """Evaluation point lies outside the function's domain."""


class NoCoveringPieceError(PwlatticeError):
    """A domain point is covered by no piece (invalid cover)."""


class TieDetectedError(PwlatticeError):
    """Two components tie at a cell witness; the witness is corrupt."""


class NoMatchError(PwlatticeError):
    """No component matches the function value at a cell witness."""


class AmbiguousMatchError(PwlatticeError):
    """Two components match the function value at a cell witness."""


class NoWitnessError(PwlatticeError):
    """No valid index exists for the two-sided inequality pair."""


class NoPathError(PwlatticeError):
    """BFS on the cell adjacency graph disagrees with the separation metric."""


class DomainMismatchError(PwlatticeError):
    """Coordinate functions of a vector-valued input live on different domains."""


class ComponentMismatchError(PwlatticeError):
    """A polynomial's component family differs from the function's."""


class CenterNotInteriorError(PwlatticeError):
    """The radial-extension center is not strictly inside the polytope."""


class InconsistentBoundaryDataError(PwlatticeError):
    """Facet funcs disagree on a facet intersection, or a facet lacks data."""


class TargetDoesNotContainDomainError(PwlatticeError):
    """The extension target does not contain the original domain."""
