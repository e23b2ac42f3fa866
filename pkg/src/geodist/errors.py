"""Exception hierarchy shared by every geodist module."""


class GeodistError(Exception):
    """Base class for all errors raised by geodist."""


class ParseError(GeodistError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(GeodistError, ValueError):
    pass


class ResourceError(GeodistError):
    """An enumeration cap would be exceeded."""


class SingularMatrixError(GeodistError, ArithmeticError):
    pass


class DomainError(GeodistError, ValueError):
    def __init__(self, message, index=None):
        self.index = index
        super().__init__(message)
