"""Exception hierarchy shared by every module."""


class VimcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidVertexError(VimcError, ValueError):
    pass


class CapacityError(VimcError):
    """An exhaustive routine was asked to work beyond its configured size limit."""


class ParseError(VimcError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NotASentenceError(VimcError, ValueError):
    pass


class UnboundVariableError(VimcError, ValueError):
    pass


class WrongFragmentError(VimcError, ValueError):
    """A first-order-only routine received a formula with set quantifiers."""
