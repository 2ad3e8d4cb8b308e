"""Exception types shared across the package."""


class EtlError(Exception):
    """Base class for all errors raised by this package."""


class FrameError(EtlError, ValueError):
    """A frame description violates a structural invariant."""


class DuplicateEvent(FrameError):
    pass


class DuplicateRoot(FrameError):
    pass


class NotPrefixClosed(FrameError):
    pass


class UnknownHistory(FrameError):
    pass


class UnknownEvent(FrameError):
    pass


class FormulaSyntaxError(EtlError, ValueError):
    """Formula text could not be parsed; carries the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FrameDocumentError(EtlError, ValueError):
    """A frame document is malformed; carries a location when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column if column is not None else 1})"
        super().__init__(message)
        self.line = line
        self.column = column


class PreconditionViolated(EtlError, ValueError):
    pass


class SearchSpaceTooLarge(EtlError, RuntimeError):
    pass


class UnknownClaim(EtlError, ValueError):
    pass


class UnknownFixture(EtlError, ValueError):
    pass


class NonTotalMap(EtlError, ValueError):
    pass
