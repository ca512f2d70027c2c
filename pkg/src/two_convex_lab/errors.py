"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: parse errors (2), mesh validation
errors (3), operation precondition errors (4).
"""


class TwoConvexError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------- parsing

class OffSyntaxError(TwoConvexError):
    """Malformed OFF4 input; carries the 1-based line number."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IndexOutOfRange(TwoConvexError):
    pass


# ------------------------------------------------------------- validation

class MeshError(TwoConvexError):
    """A surface failed structural validation."""


class NonManifold(MeshError):
    pass


class DegenerateTriangle(MeshError):
    pass


class DuplicateVertex(MeshError):
    pass


class NotClosed(MeshError):
    pass


class UnknownBuiltin(TwoConvexError):
    pass


class ResolutionTooSmall(TwoConvexError):
    pass


# ---------------------------------------------------------- preconditions

class PreconditionError(TwoConvexError):
    """An operation was called outside its contract."""


class NotSimplicial(PreconditionError):
    pass


class InvalidGenus(PreconditionError):
    pass


class DegeneratePlane(PreconditionError):
    pass


class PointOnSurface(PreconditionError):
    pass


class NotStrictSupport(PreconditionError):
    pass


class VertexOnSlice(PreconditionError):
    pass


class EmptyIntersection(PreconditionError):
    pass


class TooFewPoints(PreconditionError):
    pass


class CollinearAll(PreconditionError):
    pass


class PlanarHull(PreconditionError):
    pass


class NotApplicable(PreconditionError):
    pass


class NoValidMembrane(PreconditionError):
    pass


class NonTransversalCrossing(PreconditionError):
    pass


class CurveTouchesLine(PreconditionError):
    pass


class InternalError(TwoConvexError):
    """An invariant the code relies on failed; indicates a bug."""
