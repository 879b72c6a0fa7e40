"""Exception types raised by the library."""


class PartsetError(Exception):
    """Base class for all library errors."""


class MalformedError(PartsetError, ValueError):
    """Input data violates a structural invariant."""


class UnknownElementError(MalformedError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CompositionError(PartsetError, ValueError):
    """Two maps do not share the required middle object."""


class ShapeError(PartsetError, ValueError):
    """A diagram of maps does not have the expected shape."""


class PreconditionError(PartsetError, ValueError):
    """An operation was called outside its hypotheses."""


class BoundExceeded(PartsetError):
    """A computation would exceed a configured size bound."""


class PostconditionError(PartsetError, AssertionError):
    """A computed result violates a property it is guaranteed to have."""


class ParseError(MalformedError):
    def __init__(self, message, line=None, column=None, source=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.source = source

    def __str__(self):
        where = []
        if self.source:
            where.append(str(self.source))
        if self.line is not None:
            where.append(str(self.line))
            if self.column is not None:
                where.append(str(self.column))
        prefix = ":".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message
