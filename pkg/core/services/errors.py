class LabError(ValueError):
    """Base class of every error raised by the laboratory services."""


class DomainError(LabError):
    """A parameter lies outside the mathematical domain of the operation."""


class SingularityError(LabError):
    """A series cannot be inverted (vanishing constant term)."""


class PreconditionError(LabError):
    """The caller did not meet a stated precondition (e.g. truncation too short)."""


class SpecError(LabError):
    """A literal or input file could not be parsed."""
