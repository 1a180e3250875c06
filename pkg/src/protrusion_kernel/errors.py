"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad vertex id, non-edge, size mismatch)."""


class CapabilityError(RuntimeError):
    """The request exceeds an enforced size cap of an exhaustive routine."""


class PreconditionError(ValueError):
    """A documented precondition does not hold (e.g. width above the configured bound)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingTableError(InputError):
    """No cached table for a boundary size; ``command`` builds it."""

    def __init__(self, message, command):
        self.command = command
        super().__init__(f"{message}; build it with: {command}")
