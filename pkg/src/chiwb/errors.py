"""Exception hierarchy shared by every part of the workbench."""


class ChiwbError(Exception):
    """Base class for all workbench errors."""


class RingMismatch(ChiwbError):
    pass


class CoefficientError(ChiwbError):
    """A coefficient is not representable in the ring's field."""


class ParseError(ChiwbError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class PreconditionError(ChiwbError):
    pass


class SupportNotAtOrigin(PreconditionError):
    pass


class InfiniteLength(ChiwbError):
    pass


class NoStabilization(ChiwbError):
    pass


class BudgetExhausted(ChiwbError):
    pass


class NotModuleFinite(PreconditionError):
    pass


class ResidualSupport(ChiwbError):
    pass


class SupportNotFinite(ChiwbError):
    pass


class AssertionFailed(ChiwbError):
    """A checked identity did not hold; ``report`` carries the intermediates."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
