"""Exception hierarchy.

Errors split into two families so the command line can map them to exit
codes: precondition failures (bad mathematical input) and certification
failures (a computed object did not pass its own checks).
"""


class FoliationError(Exception):
    """Base class for every error raised by the package."""


class PreconditionError(FoliationError):
    """The input does not satisfy a mathematical precondition."""


class CertificationFailure(FoliationError):
    """A constructed object failed an identity it must satisfy."""


class ParseError(FoliationError):
    """Malformed polynomial or input file.

    ``line`` and ``col`` are 1-based; ``expected`` lists what the parser
    would have accepted at that point.
    """

    def __init__(self, message, line=1, col=1, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        self.message = message
        where = f"line {line}, column {col}"
        hint = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}: {message}{hint}")


class DimensionMismatch(PreconditionError):
    pass


class DuplicateName(ParseError):
    pass


class NotInImage(PreconditionError):
    """The target vector is not in the module spanned by the columns."""


class LengthExceeded(PreconditionError):
    pass


class NotInvolutive(PreconditionError):
    pass


class DifferentFoliations(PreconditionError):
    pass


class RootNotInKernel(PreconditionError):
    pass


class ExactnessFailure(CertificationFailure):
    pass


class SelfCommutatorNotVertical(CertificationFailure):
    pass
