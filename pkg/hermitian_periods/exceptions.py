"""Exception hierarchy shared by every computation app."""


class HermitianPeriodsError(Exception):
    """Base class for all library errors."""


class InvalidInput(HermitianPeriodsError, ValueError):
    """A field, prime, matrix or serialized object failed validation."""


class BudgetExceeded(HermitianPeriodsError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, what, requested, allowed):
        self.what = what
        self.requested = requested
        self.allowed = allowed
        super().__init__(f"{what}: {requested} elements requested, budget is {allowed}")


class StabilizationError(HermitianPeriodsError):
    """Normalized counts did not agree at two consecutive levels."""

    def __init__(self, kind, level, first, second):
        self.kind = kind
        self.level = level
        self.values = (first, second)
        super().__init__(f"{kind} not stable at level {level}: {first} != {second}")


class ResidualError(HermitianPeriodsError):
    """The Siegel series quotient left a nonzero residual."""


class FunctionalEquationError(HermitianPeriodsError):
    pass


class NonRationalCharacterSum(HermitianPeriodsError):
    pass


class PrecisionError(HermitianPeriodsError):
    """p-adic working precision too small to decide a valuation."""


class VerificationFailure(HermitianPeriodsError):
    """An identity check failed; ``report`` holds the localized diff."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"verification failed: {report.family} at t-order {report.first_mismatch}")


class FormDataError(HermitianPeriodsError):
    """Ingested modular form data is malformed or inconsistent."""
