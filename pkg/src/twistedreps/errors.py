"""Exception hierarchy shared by every module."""


class TwistedRepsError(Exception):
    """Base class for all library errors."""


class FieldMismatch(TwistedRepsError):
    """Operands live over different fields."""


class DimensionMismatch(TwistedRepsError, ValueError):
    pass


class AlgebraMismatch(TwistedRepsError):
    """Modules or bimodules over incompatible algebras."""


class LawViolation(TwistedRepsError):
    """Structure constants or actions fail an algebraic law."""


class LiftFailure(TwistedRepsError):
    """A chain map could not be lifted; the source was not projective."""


class FunctorNotExact(TwistedRepsError):
    pass


class CyclicQuiver(TwistedRepsError):
    pass


class DiagramMismatch(TwistedRepsError):
    pass


class UniquenessFailure(TwistedRepsError):
    """An induced structure map that must be unique was not."""


class HypothesisViolated(TwistedRepsError):
    """A long exact sequence was requested without its exactness hypothesis."""

    def __init__(self, arrow, side, message=None):
        self.arrow = arrow
        self.side = side
        super().__init__(message or f"arrow {arrow!r}: {side} functor is not exact")


class NotVectDiagram(TwistedRepsError):
    pass


class InvariantBreach(TwistedRepsError):
    """An internal consistency check failed (γβ != 0, non-cocycle image, ...)."""


class DocumentError(TwistedRepsError):
    """A document is malformed; ``location`` is a JSON-pointer-like path."""

    def __init__(self, location, message):
        self.location = location
        super().__init__(f"{location}: {message}")
