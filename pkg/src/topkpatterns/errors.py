"""Exception hierarchy shared across the package."""


class MiningError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(MiningError):
    """A graph file could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class GraphValidationError(MiningError):
    """The parsed graph violates a structural constraint (self-loop, bad id)."""


class ParameterError(MiningError):
    """An argument is outside its documented range."""


class CapacityError(MiningError):
    """An input exceeds a configured size cap; retry with smaller inputs."""


class ContractError(MiningError):
    """Caller broke an internal API contract (e.g. mismatched domains)."""
