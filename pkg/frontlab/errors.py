"""Error taxonomy for frontlab.

Every error raised on purpose by frontlab derives from :class:`FrontlabError` and
from the closest built-in exception, so callers may catch either. Errors carry an
`exit_code` used by the command line front end: 2 for bad input, 3 when a
mathematical precondition of a construction fails.
"""


class FrontlabError(Exception):
    """Base class for all frontlab errors."""

    exit_code = 3

    @property
    def name(self) -> str:
        return type(self).__name__


class InputError(FrontlabError):
    """Raised when user supplied input cannot be used."""

    exit_code = 2


class ParseError(InputError, ValueError):
    """Raised when a surface definition file does not follow the grammar."""

    def __init__(self, message: str, line: int = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConstraintError(InputError, ValueError):
    """Raised when normal form coefficients violate b20 >= 0, b03 != 0."""


class RangeError(InputError, ValueError):
    """Raised for malformed coefficient sweep ranges."""


class PreconditionError(FrontlabError):
    """Raised when a geometric construction is not defined at the given input."""


class NotInNormalForm(PreconditionError, ValueError):
    pass


class NotDivisibleByV(PreconditionError, ValueError):
    pass


class DivisionNearZero(PreconditionError, ZeroDivisionError):
    pass


class SqrtOfNonpositive(PreconditionError, ArithmeticError):
    pass


class DegenerateFrame(PreconditionError, ArithmeticError):
    pass


class NotAFront(PreconditionError, ValueError):
    pass


class OnSingularCurve(PreconditionError, ValueError):
    pass


class UmbilicPoint(PreconditionError, ValueError):
    pass


class NotRegular(PreconditionError, ValueError):
    pass


class ZeroCurvature(PreconditionError, ValueError):
    pass


class NonzeroCurvature(PreconditionError, ValueError):
    pass


class BadTranslationVector(PreconditionError, ValueError):
    pass


class InconsistentNull(PreconditionError, ArithmeticError):
    """Raised when a supplied null vector field does not annihilate df."""


class ConsistencyFailure(PreconditionError, ArithmeticError):
    """Raised when two independent computations of one quantity disagree."""
