"""Exception types shared across the package."""


class LietripleError(Exception):
    pass


class PoleAtZero(LietripleError):
    """The reduced denominator vanishes at t = 0."""


class PoleAtPoint(LietripleError):
    """The reduced denominator vanishes at the evaluation point."""


class ParseError(LietripleError, ValueError):
    pass


class DimensionMismatch(LietripleError, ValueError):
    pass


class SingularMatrix(LietripleError, ValueError):
    pass


class InconsistentTable(LietripleError, ValueError):
    """Table completion forced two different values for the same product."""


class AxiomViolation(LietripleError, ValueError):
    """A completed tensor fails one of the defining identities."""

    def __init__(self, identity, indices, residual):
        self.identity = identity
        self.indices = indices
        self.residual = residual
        super().__init__(f"{identity} fails at {indices}: residual {residual}")


class NotALieAlgebra(LietripleError, ValueError):
    pass


class NotClosed(LietripleError, ValueError):
    """A cochain fails one of the cocycle conditions."""


class NotAnAutomorphism(LietripleError, ValueError):
    pass


class NotAbelianDim3(LietripleError, ValueError):
    pass


class RelationViolated(LietripleError, ValueError):
    pass


class ZeroVector(LietripleError, ValueError):
    pass


class UnknownName(LietripleError, KeyError):
    pass


class MissingParameter(LietripleError, ValueError):
    pass


class SingularParameter(LietripleError, ValueError):
    pass


class NotNilpotent(LietripleError, ValueError):
    pass


class DimensionUnsupported(LietripleError, ValueError):
    pass


class NoMatch(LietripleError, ValueError):
    """No catalog entry matches; indicates a bug or an unclassified input."""


class PreconditionViolated(LietripleError, ValueError):
    pass


class SingularBasis(LietripleError, ValueError):
    pass


class InconsistentGraph(LietripleError, ValueError):
    """A verified degeneration contradicts a necessary condition."""


class MalformedInput(LietripleError, ValueError):
    """A JSON document does not match the expected schema."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
