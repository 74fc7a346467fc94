"""Exception hierarchy shared by all modules."""


class TorocohError(Exception):
    """Base class; ``code`` is a stable machine-readable tag."""

    code = "ERROR"


class ValidationError(TorocohError, ValueError):
    code = "INVALID_INPUT"


class UncertifiableError(TorocohError):
    code = "UNCERTIFIABLE"


class NonconvergentError(TorocohError):
    code = "NONCONVERGENT"


class NotAlgebraicError(TorocohError, TypeError):
    code = "NOT_ALGEBRAIC"


class NonIntegerPError(TorocohError):
    code = "NON_INTEGER_P"


class SingularBError(TorocohError):
    code = "SINGULAR_B"


class UndecidedTieError(TorocohError):
    code = "UNDECIDED_TIE"


class UncertifiedError(TorocohError):
    code = "UNCERTIFIED"


class DivisionUndecidedError(TorocohError):
    code = "DIVISION_UNDECIDED"


class PreconditionError(TorocohError):
    code = "PRECONDITION"
