from typing import Optional


class SnkError(Exception):
    """Base class for every error raised by the engine."""


class InputError(SnkError):
    """Malformed polynomial text, problem file or presentation data."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None and column is not None:
            location = f"line {line}, column {column}: "
        elif column is not None:
            location = f"column {column}: "
        elif line is not None:
            location = f"line {line}: "
        super().__init__(f"{location}{message}")
        self.message = message

    def at_line(self, line: int) -> "InputError":
        """Return a copy of this error positioned on a problem-file line."""
        return InputError(self.message, line=line, column=self.column)


class ComputationBudgetExceeded(SnkError):
    """Buchberger processed more S-pairs than the configured budget allows."""

    def __init__(self, budget: int, processed: int):
        self.budget = budget
        self.processed = processed
        super().__init__(f"S-pair budget of {budget} exceeded after {processed} pairs")


class PresentationError(SnkError):
    """A variety or extension presentation violates its invariants."""


class NotFinite(SnkError):
    pass


class NotIntegral(SnkError):
    pass


class ReducibleAmbiguity(SnkError):
    """A zero-divisor denominator on a variety given without its components."""


class PreconditionFailed(SnkError):
    pass


class AlreadyInRing(SnkError):
    pass


class NotRegulousError(SnkError):
    pass


class NotRegulousOnAmbient(SnkError):
    pass


class NotInRadical(SnkError):
    pass


class NotFoundWithinBound(SnkError):
    def __init__(self, message: str, bound: int):
        self.bound = bound
        super().__init__(f"{message} (bound {bound})")


class WitnessNotFound(SnkError):
    pass


class CertificateError(SnkError):
    """A certificate file is malformed (as opposed to merely failing verification)."""
