"""Exception hierarchy shared by every module."""


class DiffTSPError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(DiffTSPError, ValueError):
    """Input data does not describe a well-formed object (bad vertex, bad matrix, ...)."""


class PreconditionError(DiffTSPError, ValueError):
    """An operation was called outside of its documented domain."""


class InfeasibleError(DiffTSPError):
    """No object satisfying the requested constraints exists."""


class InternalInvariantError(DiffTSPError, AssertionError):
    """A structural property guaranteed by the construction failed to hold.

    Seeing this means there is a bug in the implementation, not bad input.
    """


class SteeringError(DiffTSPError):
    """A prescribed edge choice in the path-cover procedure is not admissible."""

    def __init__(self, round_index: int, message: str) -> None:
        super().__init__(f"round {round_index}: {message}")
        self.round_index = round_index


class AuditError(InternalInvariantError):
    """An audit of the tour construction failed; carries the offending witness."""

    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message if witness is None else f"{message} (witness: {witness!r})")
        self.witness = witness


class ResourceGuardError(DiffTSPError):
    """A request would exceed a configured size cap."""
