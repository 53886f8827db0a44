"""Exception types shared across the package."""


class PosatError(Exception):
    pass


class CycleError(PosatError):
    """A relation's transitive closure would relate an element to itself."""


class ParseError(PosatError):
    """Malformed input text; carries the offending 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GroundTooLarge(PosatError):
    """A full 2^n scan was requested beyond the configured budget."""


class PreconditionError(PosatError):
    """An operation was called on input that violates its stated precondition."""


class ParameterError(PosatError):
    """Parameters outside the domain an operation is defined on."""


class BudgetExceeded(PosatError):
    """Node or time budget ran out; ``partial`` holds whatever was completed."""

    def __init__(self, message, partial=None):
        self.partial = partial
        super().__init__(message)
