"""Exception hierarchy for cubefold.

Every domain error raised by the library derives from CubefoldError so that
callers (and the CLI) can distinguish domain failures from programming bugs.
Internal invariants that are mathematically guaranteed are plain assertions.
"""


class CubefoldError(Exception):
    """Base class for all cubefold domain errors."""


# --- graph construction -----------------------------------------------------

class DuplicateVertex(CubefoldError):
    pass


class UnknownEndpoint(CubefoldError):
    pass


class SelfLoop(CubefoldError):
    pass


class Disconnected(CubefoldError):
    pass


class UnknownVertex(CubefoldError):
    pass


# --- hyperplanes ------------------------------------------------------------

class NotWellDefined(CubefoldError):
    """A carrier vertex meets more than one edge of the same parallelism class."""


class HalfspacesUnavailable(CubefoldError):
    """A parallelism class does not split the graph into exactly two sides."""


# --- median operations ------------------------------------------------------

class NotMedian(CubefoldError):
    pass


class DisconnectedSubset(CubefoldError):
    pass


# --- morphisms --------------------------------------------------------------

class NotEdgePreserving(CubefoldError):
    """An edge maps to a non-adjacent vertex pair."""


class EdgeCollapsed(CubefoldError):
    """An edge maps to a single vertex."""


class ParallelBroken(CubefoldError):
    """Two parallel edges map into different parallelism classes."""


class DomainMismatch(CubefoldError):
    pass


# --- folds and swells -------------------------------------------------------

class NotInContact(CubefoldError):
    pass


class NotTangent(CubefoldError):
    pass


class NotFactorizable(CubefoldError):
    """The requested map does not factor through the construction."""

    def __init__(self, message: str, missing_neighbor: bool = False):
        super().__init__(message)
        self.missing_neighbor = missing_neighbor


class MissingFourthCorner(CubefoldError):
    """Three corners of a square have no completion; the codomain is not median."""


class ImagesDiffer(CubefoldError):
    pass


# --- symmetry ---------------------------------------------------------------

class NotAutomorphism(CubefoldError):
    pass


class GroupTooLarge(CubefoldError):
    pass


class NotEquivariant(CubefoldError):
    pass


# --- text formats -----------------------------------------------------------

class ParseError(CubefoldError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
