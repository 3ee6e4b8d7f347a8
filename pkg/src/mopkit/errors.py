"""Exception hierarchy shared by every mopkit module."""


class MopError(Exception):
    """Base class for all library errors."""


class ShapeError(MopError, ValueError):
    pass


class SingularMatrix(MopError, ArithmeticError):
    pass


class SingularPivot(SingularMatrix):
    """Leading block of a Schur complement is not invertible."""


class NonNormal(MopError):
    """The moment matrix of a multi-index pair is singular."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class PoleOnSupport(MopError, ValueError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DuplicatePoint(MopError, ValueError):
    pass


class UnknownPreset(MopError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown preset"


class NegativeComponent(MopError, ValueError):
    pass


class ChainDepthExceeded(MopError, ValueError):
    pass


class RequiresRankOne(MopError, TypeError):
    pass


class EqualArguments(MopError, ValueError):
    pass


class EnumerationCapExceeded(MopError, RuntimeError):
    pass


class IdentityMismatch(MopError, AssertionError):
    """Two routes that must agree produced different values."""


class SpecParseError(MopError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column
